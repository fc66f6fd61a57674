#include "hypeca/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <queue>

namespace hypeca {

std::complex<double> Moebius::apply(std::complex<double> z) const {
    return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

Moebius Moebius::then(const Moebius& inner) const {
    // matrix product [[a,b],[b*,a*]] * [[a',b'],[b'*,a'*]]
    Moebius m;
    m.a = a * inner.a + b * std::conj(inner.b);
    m.b = a * inner.b + b * std::conj(inner.a);
    double norm = std::sqrt(std::abs(std::norm(m.a) - std::norm(m.b)));
    m.a /= norm;
    m.b /= norm;
    return m;
}

Moebius Moebius::rotation(double angle) {
    return {std::polar(1.0, angle / 2.0), {0.0, 0.0}};
}

Moebius Moebius::translation(double t) {
    double s = 1.0 / std::sqrt(1.0 - t * t);
    return {{s, 0.0}, {t * s, 0.0}};
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Metrics {
    double vertex_radius; // Euclidean radius of the central octagon's vertices
    double step_t;        // translation parameter between adjacent tile centers
};

Metrics metrics() {
    // {8,3} right triangle (center, edge midpoint, vertex): the apothem r
    // satisfies cosh r = cos(pi/3)/sin(pi/8), the half-edge s satisfies
    // cosh s = cos(pi/8)/sin(pi/3), and the circumradius R comes from
    // cosh R = cosh r * cosh s. Adjacent tile centers are 2r apart.
    double r = std::acosh(std::cos(kPi / 3.0) / std::sin(kPi / 8.0));
    double s = std::acosh(std::cos(kPi / 8.0) / std::sin(kPi / 3.0));
    double R = std::acosh(std::cosh(r) * std::cosh(s));
    return {std::tanh(R / 2.0), std::tanh(r)};
}

double side_angle(int side) { return static_cast<double>(side) * (kPi / 4.0); } // side index 0..7

std::string fmt(double v) {
    if (std::abs(v) < 5e-7) v = 0.0; // avoid "-0.000000"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

DiskLayout layout_ball(const TilingBall& ball) {
    Metrics m = metrics();
    DiskLayout layout;
    layout.tiles.resize(static_cast<std::size_t>(ball.cell_count()));

    std::vector<Moebius> frames(static_cast<std::size_t>(ball.cell_count()));
    std::vector<bool> placed(static_cast<std::size_t>(ball.cell_count()), false);
    std::queue<int> queue;
    frames[0] = Moebius{};
    placed[0] = true;
    queue.push(0);
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop();
        auto nb = ball.neighbors_raw(c);
        for (int s = 0; s < 8; ++s) {
            int n = nb[static_cast<std::size_t>(s)];
            if (n == TilingBall::kNoCell || placed[static_cast<std::size_t>(n)]) continue;
            int back = ball.side_of(n, c);
            // place n so its side `back` faces c's side `s`
            Moebius hop = Moebius::rotation(side_angle(s))
                              .then(Moebius::translation(m.step_t))
                              .then(Moebius::rotation(kPi - side_angle(back)));
            frames[static_cast<std::size_t>(n)] = frames[static_cast<std::size_t>(c)].then(hop);
            placed[static_cast<std::size_t>(n)] = true;
            queue.push(n);
        }
    }
    for (int c = 0; c < ball.cell_count(); ++c) {
        auto& tile = layout.tiles[static_cast<std::size_t>(c)];
        tile.cell = ball.cell(c);
        tile.center = frames[static_cast<std::size_t>(c)].apply({0.0, 0.0});
        for (int k = 0; k < 8; ++k) {
            // vertex k sits between side k and side k+1
            double angle = side_angle(k) + kPi / 8.0;
            tile.vertices[static_cast<std::size_t>(k)] =
                frames[static_cast<std::size_t>(c)].apply(std::polar(m.vertex_radius, angle));
        }
    }
    return layout;
}

double layout_edge_error(const TilingBall& ball, const DiskLayout& layout) {
    double worst = 0.0;
    for (int c = 0; c < ball.cell_count(); ++c) {
        auto nb = ball.neighbors_raw(c);
        for (int s = 0; s < 8; ++s) {
            int n = nb[static_cast<std::size_t>(s)];
            if (n == TilingBall::kNoCell || n < c) continue;
            int back = ball.side_of(n, c);
            // side s of c has vertices s-1 and s; side `back` of n the same two points
            auto mine_a = layout.tiles[static_cast<std::size_t>(c)].vertices[static_cast<std::size_t>((s + 7) & 7)];
            auto mine_b = layout.tiles[static_cast<std::size_t>(c)].vertices[static_cast<std::size_t>(s)];
            auto theirs_a = layout.tiles[static_cast<std::size_t>(n)].vertices[static_cast<std::size_t>((back + 7) & 7)];
            auto theirs_b = layout.tiles[static_cast<std::size_t>(n)].vertices[static_cast<std::size_t>(back)];
            double direct = std::max(std::abs(mine_a - theirs_b), std::abs(mine_b - theirs_a));
            double swapped = std::max(std::abs(mine_a - theirs_a), std::abs(mine_b - theirs_b));
            worst = std::max(worst, std::min(direct, swapped));
        }
    }
    return worst;
}

namespace {

// Geodesic边 between two disk points as an SVG arc (straight when the chord
// passes through the origin).
std::string edge_path(std::complex<double> from, std::complex<double> to) {
    double cross = from.real() * to.imag() - from.imag() * to.real();
    if (std::abs(cross) < 1e-12) return "L " + fmt(to.real()) + " " + fmt(to.imag());
    // circle orthogonal to the unit circle through both points
    double d1 = std::norm(from) + 1.0, d2 = std::norm(to) + 1.0;
    double det = 2.0 * cross;
    double cx = (to.imag() * d1 - from.imag() * d2) / det;
    double cy = (from.real() * d2 - to.real() * d1) / det;
    double radius = std::sqrt(cx * cx + cy * cy - 1.0);
    int sweep = cross > 0 ? 0 : 1;
    return "A " + fmt(radius) + " " + fmt(radius) + " 0 0 " + std::to_string(sweep) + " " + fmt(to.real()) + " " +
           fmt(to.imag());
}

std::string tile_path(const DiskLayout::Tile& tile) {
    std::string d = "M " + fmt(tile.vertices[7].real()) + " " + fmt(tile.vertices[7].imag());
    for (int k = 0; k < 8; ++k) {
        d += " ";
        d += edge_path(tile.vertices[static_cast<std::size_t>((k + 7) & 7)], tile.vertices[static_cast<std::size_t>(k)]);
    }
    d += " Z";
    return d;
}

} // namespace

std::string render_frame(const DiskLayout& layout, const Configuration& config,
                         const std::map<std::string, std::vector<CellId>>& highlights) {
    const TilingBall& ball = config.ball();
    static const char* kPalette[] = {"#f3d34a", "#f2a0c0", "#97d077", "#9ecae8", "#d5b8e8"};
    std::map<int, std::string> highlight_fill;
    int palette_idx = 0;
    for (const auto& [name, cells] : highlights) {
        const char* colour = kPalette[palette_idx % 5];
        ++palette_idx;
        for (const CellId& c : cells)
            if (ball.contains(c)) highlight_fill.emplace(ball.ref(c), colour);
    }

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"720\" height=\"720\">\n";
    svg += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"white\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
    for (int c = 0; c < ball.cell_count(); ++c) {
        const auto& tile = layout.tiles[static_cast<std::size_t>(c)];
        std::string fill = "white";
        if (auto it = highlight_fill.find(c); it != highlight_fill.end()) fill = it->second;
        if (config.at(c) == State::B) fill = "#00008b"; // the paper draws black as dark blue
        svg += "<path d=\"" + tile_path(tile) + "\" fill=\"" + fill + "\" stroke=\"black\" stroke-width=\"0.002\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void dump_layout(const DiskLayout& layout, std::ostream& out) {
    out << "# poincare layout; coincidence tolerance " << fmt(layout.tolerance) << "\n";
    for (const auto& tile : layout.tiles) {
        out << format_label(tile.cell) << " " << fmt(tile.center.real()) << " " << fmt(tile.center.imag());
        for (const auto& v : tile.vertices) out << " " << fmt(v.real()) << " " << fmt(v.imag());
        out << "\n";
    }
}

} // namespace hypeca
