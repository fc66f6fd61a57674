#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypeca/errors.hpp"

namespace hypeca {

// Address of a tile in the sector-tree numbering: "index(sector)".
// The central cell is 0(0); sector roots are 1(1)..1(8); within a sector,
// indices grow level by level, left to right.
struct CellId {
    std::uint8_t sector = 0;
    std::uint32_t index = 0;

    friend bool operator==(const CellId&, const CellId&) = default;
    friend auto operator<=>(const CellId&, const CellId&) = default;
};

CellId parse_label(std::string_view text);
std::string format_label(CellId id);

enum class NodeKind : std::uint8_t { W, B };

// Finite ball of the {8,3} tessellation, built as eight sector trees
// (W -> BWWW, B -> BWW) glued around the central cell and stitched to each
// other along the boundary rays. Immutable after construction.
//
// Canonical neighbor order is a fixed counterclockwise cycle per cell:
//   central cell: 1(1)..1(8)
//   W-node:       S1 S2 S3 S4 N R P L
//   B-node:       T1 T2 T3 N R P U L
// where S/T are sons (first son is the B-son), R/L the next/previous cell on
// the same level (cyclically across sectors), P the parent, U = prev(P) (the
// second upper neighbor every B-node has), and N the B-son of R. For the
// central cell and the roots this reproduces the side numbers the tables use
// (neighbor i of 0(0) is 1(i); side 7 of a root faces 0(0)).
class TilingBall {
public:
    static constexpr int kNoCell = -1;

    explicit TilingBall(int levels);

    int levels() const { return levels_; }
    int cell_count() const { return static_cast<int>(ids_.size()); }
    int per_sector_count() const { return per_sector_; }

    bool contains(CellId id) const;
    int ref(CellId id) const; // dense handle, fails with malformed_label if absent
    CellId cell(int ref) const { return ids_[static_cast<std::size_t>(ref)]; }

    int level(int ref) const { return levels_of_[static_cast<std::size_t>(ref)]; }
    NodeKind kind(int ref) const { return kinds_[static_cast<std::size_t>(ref)]; }
    int parent(int ref) const { return parents_[static_cast<std::size_t>(ref)]; }

    // All 8 canonical neighbors; entries are kNoCell outside the ball.
    std::span<const int, 8> neighbors_raw(int ref) const;
    int neighbor(int ref, int k) const { return neighbors_raw(ref)[static_cast<std::size_t>(k)]; }

    bool is_interior(int ref) const;
    // Canonical side index of `other` around `ref`, or -1.
    int side_of(int ref, int other) const;

    // Full neighborhood in canonical order; BoundaryCell if incomplete.
    std::array<CellId, 8> neighbors(CellId id) const;

    int level_size_per_sector(int level) const; // L_0=1, L_1=4, L_{n+1}=4L_n-L_{n-1}

    // One line per cell: "label: n1 n2 ... n8" (missing neighbors as "-").
    void export_adjacency(std::ostream& out) const;

private:
    int levels_ = 0;
    int per_sector_ = 0;
    std::vector<CellId> ids_;
    std::vector<std::uint8_t> levels_of_;
    std::vector<NodeKind> kinds_;
    std::vector<int> parents_;
    std::vector<int> first_son_;
    std::vector<std::array<int, 8>> nbrs_;
    std::vector<int> level_sizes_;
    std::vector<std::uint32_t> level_base_; // first per-sector index of each level
};

} // namespace hypeca
