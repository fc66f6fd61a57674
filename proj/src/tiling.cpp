#include "hypeca/tiling.hpp"

#include <cctype>
#include <charconv>
#include <ostream>

namespace hypeca {

CellId parse_label(std::string_view text) {
    auto bad = [&] { fail(Errc::malformed_label, "malformed cell label: '" + std::string(text) + "'"); };
    std::size_t open = text.find('(');
    if (open == std::string_view::npos || open == 0 || text.back() != ')' || text.size() < 4) bad();
    std::string_view idx_part = text.substr(0, open);
    std::string_view sec_part = text.substr(open + 1, text.size() - open - 2);
    if (sec_part.size() != 1 || !std::isdigit(static_cast<unsigned char>(sec_part[0]))) bad();
    for (char c : idx_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    std::uint32_t index = 0;
    if (std::from_chars(idx_part.data(), idx_part.data() + idx_part.size(), index).ec != std::errc{}) bad();
    int sector = sec_part[0] - '0';
    if (sector == 0 || index == 0) {
        if (sector != 0 || index != 0) bad();
        return CellId{0, 0};
    }
    if (sector > 8) bad();
    return CellId{static_cast<std::uint8_t>(sector), index};
}

std::string format_label(CellId id) {
    return std::to_string(id.index) + "(" + std::to_string(id.sector) + ")";
}

TilingBall::TilingBall(int levels) {
    if (levels < 0) levels = 0;
    if (levels > 12) levels = 12;
    levels_ = levels;

    level_sizes_.assign(static_cast<std::size_t>(levels) + 1, 0);
    level_base_.assign(static_cast<std::size_t>(levels) + 2, 0);
    level_sizes_[0] = 1;
    level_base_[0] = 1;
    if (levels >= 1) level_sizes_[1] = 4;
    for (int l = 2; l <= levels; ++l)
        level_sizes_[static_cast<std::size_t>(l)] =
            4 * level_sizes_[static_cast<std::size_t>(l - 1)] - level_sizes_[static_cast<std::size_t>(l - 2)];
    for (int l = 0; l <= levels; ++l)
        level_base_[static_cast<std::size_t>(l + 1)] =
            level_base_[static_cast<std::size_t>(l)] + static_cast<std::uint32_t>(level_sizes_[static_cast<std::size_t>(l)]);
    per_sector_ = static_cast<int>(level_base_[static_cast<std::size_t>(levels) + 1] - 1);

    int total = 1 + 8 * per_sector_;
    ids_.resize(static_cast<std::size_t>(total));
    levels_of_.resize(static_cast<std::size_t>(total));
    kinds_.resize(static_cast<std::size_t>(total));
    parents_.assign(static_cast<std::size_t>(total), kNoCell);
    first_son_.assign(static_cast<std::size_t>(total), kNoCell);
    nbrs_.resize(static_cast<std::size_t>(total));

    ids_[0] = CellId{0, 0};
    levels_of_[0] = 0;
    kinds_[0] = NodeKind::W;

    auto dense = [&](int sector, std::uint32_t index) {
        return 1 + (sector - 1) * per_sector_ + static_cast<int>(index) - 1;
    };

    // Level lists, one entry per cell in cyclic order (sector 1..8, left to right).
    std::vector<std::vector<int>> level_cells(static_cast<std::size_t>(levels) + 1);
    for (int s = 1; s <= 8; ++s) {
        int root = dense(s, 1);
        ids_[static_cast<std::size_t>(root)] = CellId{static_cast<std::uint8_t>(s), 1};
        levels_of_[static_cast<std::size_t>(root)] = 0;
        kinds_[static_cast<std::size_t>(root)] = NodeKind::W;
        parents_[static_cast<std::size_t>(root)] = 0;
    }
    for (int s = 1; s <= 8; ++s) {
        std::uint32_t next_index = 2;
        for (int l = 1; l <= levels; ++l) {
            std::uint32_t parent_base = level_base_[static_cast<std::size_t>(l - 1)];
            int parent_count = level_sizes_[static_cast<std::size_t>(l - 1)];
            for (int p = 0; p < parent_count; ++p) {
                int parent = dense(s, parent_base + static_cast<std::uint32_t>(p));
                int sons = kinds_[static_cast<std::size_t>(parent)] == NodeKind::W ? 4 : 3;
                first_son_[static_cast<std::size_t>(parent)] = dense(s, next_index);
                for (int k = 0; k < sons; ++k) {
                    int son = dense(s, next_index);
                    ids_[static_cast<std::size_t>(son)] = CellId{static_cast<std::uint8_t>(s), next_index};
                    levels_of_[static_cast<std::size_t>(son)] = static_cast<std::uint8_t>(l);
                    kinds_[static_cast<std::size_t>(son)] = k == 0 ? NodeKind::B : NodeKind::W;
                    parents_[static_cast<std::size_t>(son)] = parent;
                    ++next_index;
                }
            }
        }
    }
    for (int l = 0; l <= levels; ++l) {
        auto& list = level_cells[static_cast<std::size_t>(l)];
        list.reserve(static_cast<std::size_t>(8 * level_sizes_[static_cast<std::size_t>(l)]));
        for (int s = 1; s <= 8; ++s)
            for (int i = 0; i < level_sizes_[static_cast<std::size_t>(l)]; ++i)
                list.push_back(dense(s, level_base_[static_cast<std::size_t>(l)] + static_cast<std::uint32_t>(i)));
    }

    std::vector<int> pos(static_cast<std::size_t>(total), -1);
    for (auto& list : level_cells)
        for (std::size_t i = 0; i < list.size(); ++i) pos[static_cast<std::size_t>(list[i])] = static_cast<int>(i);

    auto cyc = [&](const std::vector<int>& list, int p, int delta) {
        int n = static_cast<int>(list.size());
        return list[static_cast<std::size_t>(((p + delta) % n + n) % n)];
    };

    for (int k = 0; k < 8; ++k) nbrs_[0][static_cast<std::size_t>(k)] = dense(k + 1, 1);

    for (int ref = 1; ref < total; ++ref) {
        int l = levels_of_[static_cast<std::size_t>(ref)];
        const auto& list = level_cells[static_cast<std::size_t>(l)];
        int p = pos[static_cast<std::size_t>(ref)];
        int right = cyc(list, p, +1);
        int left = cyc(list, p, -1);
        int nephew = first_son_[static_cast<std::size_t>(right)]; // B-son of the next cell
        auto& nb = nbrs_[static_cast<std::size_t>(ref)];
        nb.fill(kNoCell);
        int fs = first_son_[static_cast<std::size_t>(ref)];
        if (kinds_[static_cast<std::size_t>(ref)] == NodeKind::W) {
            for (int k = 0; k < 4; ++k) nb[static_cast<std::size_t>(k)] = fs == kNoCell ? kNoCell : fs + k;
            nb[4] = nephew;
            nb[5] = right;
            nb[6] = parents_[static_cast<std::size_t>(ref)];
            nb[7] = left;
        } else {
            for (int k = 0; k < 3; ++k) nb[static_cast<std::size_t>(k)] = fs == kNoCell ? kNoCell : fs + k;
            nb[3] = nephew;
            nb[4] = right;
            nb[5] = parents_[static_cast<std::size_t>(ref)];
            int parent = parents_[static_cast<std::size_t>(ref)];
            int uncle;
            if (l == 1) {
                // parent is a root; its predecessor is the previous root
                int s = ids_[static_cast<std::size_t>(parent)].sector;
                uncle = dense(s == 1 ? 8 : s - 1, 1);
            } else {
                uncle = cyc(level_cells[static_cast<std::size_t>(l - 1)], pos[static_cast<std::size_t>(parent)], -1);
            }
            nb[6] = uncle;
            nb[7] = left;
        }
    }
}

bool TilingBall::contains(CellId id) const {
    if (id.sector == 0) return id.index == 0;
    return id.sector <= 8 && id.index >= 1 && id.index <= static_cast<std::uint32_t>(per_sector_);
}

int TilingBall::ref(CellId id) const {
    if (!contains(id)) fail(Errc::malformed_label, "cell " + format_label(id) + " is outside the ball");
    if (id.sector == 0) return 0;
    return 1 + (id.sector - 1) * per_sector_ + static_cast<int>(id.index) - 1;
}

std::span<const int, 8> TilingBall::neighbors_raw(int ref) const {
    return std::span<const int, 8>(nbrs_[static_cast<std::size_t>(ref)]);
}

bool TilingBall::is_interior(int ref) const {
    for (int n : neighbors_raw(ref))
        if (n == kNoCell) return false;
    return true;
}

int TilingBall::side_of(int ref, int other) const {
    auto nb = neighbors_raw(ref);
    for (int k = 0; k < 8; ++k)
        if (nb[static_cast<std::size_t>(k)] == other) return k;
    return -1;
}

std::array<CellId, 8> TilingBall::neighbors(CellId id) const {
    int r = ref(id);
    if (!is_interior(r)) fail(Errc::boundary_cell, "cell " + format_label(id) + " has no full neighborhood");
    std::array<CellId, 8> out;
    auto nb = neighbors_raw(r);
    for (int k = 0; k < 8; ++k) out[static_cast<std::size_t>(k)] = cell(nb[static_cast<std::size_t>(k)]);
    return out;
}

int TilingBall::level_size_per_sector(int level) const {
    if (level < 0 || level > levels_) return 0;
    return level_sizes_[static_cast<std::size_t>(level)];
}

void TilingBall::export_adjacency(std::ostream& out) const {
    for (int r = 0; r < cell_count(); ++r) {
        out << format_label(cell(r)) << ":";
        for (int n : neighbors_raw(r)) {
            out << ' ';
            if (n == kNoCell)
                out << '-';
            else
                out << format_label(cell(n));
        }
        out << '\n';
    }
}

} // namespace hypeca
