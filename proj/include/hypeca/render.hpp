#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hypeca/engine.hpp"

namespace hypeca {

// Moebius transform of the Poincare disk, z -> (a z + b) / (conj(b) z + conj(a)).
struct Moebius {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};

    std::complex<double> apply(std::complex<double> z) const;
    Moebius then(const Moebius& inner) const; // this ∘ inner
    static Moebius rotation(double angle);
    static Moebius translation(double t); // along +x, t = tanh(d/2)
};

struct DiskLayout {
    struct Tile {
        CellId cell;
        std::complex<double> center;
        std::array<std::complex<double>, 8> vertices; // vertex k between sides k and k+1
    };
    std::vector<Tile> tiles; // indexed by ball handle
    double tolerance = 1e-9;
};

// Central regular octagon (vertex angle 2*pi/3) with side-1 midpoint at angle
// 0, children placed by walking the adjacency; deterministic.
DiskLayout layout_ball(const TilingBall& ball);

// Largest edge-endpoint mismatch across all adjacent tile pairs; the layout
// is consistent when this stays within DiskLayout::tolerance.
double layout_edge_error(const TilingBall& ball, const DiskLayout& layout);

// White cells white, black cells dark blue, optional per-path highlight fills
// behind the support; byte-stable output.
std::string render_frame(const DiskLayout& layout, const Configuration& config,
                         const std::map<std::string, std::vector<CellId>>& highlights = {});

void dump_layout(const DiskLayout& layout, std::ostream& out);

} // namespace hypeca
