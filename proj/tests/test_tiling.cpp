#include "doctest.h"

#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "hypeca/tiling.hpp"

using namespace hypeca;

TEST_CASE("label parsing and formatting") {
    CHECK(parse_label("9(3)") == CellId{3, 9});
    CHECK(parse_label("0(0)") == CellId{0, 0});
    CHECK(parse_label("35(5)") == CellId{5, 35});
    CHECK(format_label(CellId{3, 9}) == "9(3)");
    CHECK(format_label(parse_label("13(8)")) == "13(8)");

    CHECK_THROWS_AS(parse_label("9(9)"), Error); // sector out of range
    CHECK_THROWS_AS(parse_label("0(3)"), Error);
    CHECK_THROWS_AS(parse_label("3(0)"), Error);
    CHECK_THROWS_AS(parse_label("9(3"), Error);
    CHECK_THROWS_AS(parse_label("(3)"), Error);
    CHECK_THROWS_AS(parse_label("9 (3)"), Error);
    CHECK_THROWS_AS(parse_label("abc"), Error);
}

TEST_CASE("ball sizes follow the level recurrence") {
    CHECK(TilingBall(0).cell_count() == 9); // 0(0) and the eight roots
    TilingBall two(2);
    CHECK(two.per_sector_count() == 20); // level sizes 1, 4, 15
    CHECK(two.cell_count() == 161);
    TilingBall three(3);
    CHECK(three.per_sector_count() == 76);
    CHECK(three.cell_count() == 609);

    TilingBall six(6);
    int expected[] = {1, 4, 15, 56, 209, 780, 2911};
    for (int l = 0; l <= 6; ++l) CHECK(six.level_size_per_sector(l) == expected[l]);
    for (int l = 2; l <= 6; ++l)
        CHECK(six.level_size_per_sector(l) ==
              4 * six.level_size_per_sector(l - 1) - six.level_size_per_sector(l - 2));
}

TEST_CASE("level sizes match a breadth-first count from the center") {
    // BFS rings over the glued adjacency are the tree levels shifted by one.
    TilingBall ball(6);
    std::vector<int> dist(static_cast<std::size_t>(ball.cell_count()), -1);
    std::queue<int> q;
    dist[0] = 0;
    q.push(0);
    std::map<int, int> ring_size;
    ring_size[0] = 1;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        for (int n : ball.neighbors_raw(c)) {
            if (n == TilingBall::kNoCell || dist[static_cast<std::size_t>(n)] >= 0) continue;
            dist[static_cast<std::size_t>(n)] = dist[static_cast<std::size_t>(c)] + 1;
            ring_size[dist[static_cast<std::size_t>(n)]]++;
            q.push(n);
        }
    }
    CHECK(ring_size[1] == 8);
    for (int r = 1; r <= 7; ++r) CHECK(ring_size[r] == 8 * ball.level_size_per_sector(r - 1));
    // and each ring is exactly one tree level
    for (int c = 0; c < ball.cell_count(); ++c)
        CHECK(dist[static_cast<std::size_t>(c)] == (c == 0 ? 0 : ball.level(c) + 1));
}

TEST_CASE("canonical anchors from the numbering convention") {
    TilingBall ball(3);
    auto center = ball.neighbors(CellId{0, 0});
    for (int i = 1; i <= 8; ++i) CHECK(center[static_cast<std::size_t>(i - 1)] == CellId{static_cast<std::uint8_t>(i), 1});

    auto root1 = ball.neighbors(parse_label("1(1)"));
    CHECK(root1[6] == CellId{0, 0}); // side 7 of a root faces the center
    CHECK(root1[0] == parse_label("2(1)"));
    CHECK(root1[1] == parse_label("3(1)"));
    CHECK(root1[2] == parse_label("4(1)"));
    CHECK(root1[3] == parse_label("5(1)"));

    // sons of 2(1) are 6(1), 7(1), 8(1)
    auto b_cell = ball.neighbors(parse_label("2(1)"));
    CHECK(b_cell[0] == parse_label("6(1)"));
    CHECK(b_cell[1] == parse_label("7(1)"));
    CHECK(b_cell[2] == parse_label("8(1)"));
}

TEST_CASE("paths the tables walk are edge-connected") {
    TilingBall ball(4);
    auto connected = [&](const char* chain) {
        std::istringstream in(chain);
        std::string prev, cur;
        in >> prev;
        while (in >> cur) {
            int a = ball.ref(parse_label(prev));
            int b = ball.ref(parse_label(cur));
            if (ball.side_of(a, b) < 0) return false;
            if (ball.side_of(b, a) < 0) return false;
            prev = cur;
        }
        return true;
    };
    CHECK(connected("17(8) 4(8) 3(8) 2(8) 1(7) 1(6) 1(5) 1(4) 2(4) 5(3) 4(3) 13(3)"));
    CHECK(connected("32(3) 9(3) 2(3) 1(2) 1(1) 2(1) 6(1) 21(1)"));
    CHECK(connected("13(8) 4(8) 5(8) 2(1) 1(1) 0(0) 1(4) 2(4) 5(3) 4(3) 16(3)"));
    CHECK(connected("16(6) 4(6) 5(6) 2(7) 1(7) 0(0)"));
    CHECK(connected("21(2) 6(2) 5(1) 1(1) 1(2) 1(3) 3(3) 9(3) 35(3)"));
    CHECK(connected("1(1) 1(8) 1(7) 5(7) 6(8) 21(8)"));
    CHECK(connected("1(2) 2(3) 3(3) 4(3) 5(3) 2(4) 3(4) 4(4) 15(4)"));
    CHECK(connected("1(8) 1(7) 1(6) 1(5) 2(5) 5(4) 4(4)"));
    CHECK(connected("20(6) 6(7) 5(6) 1(6) 0(0) 1(8) 2(8) 9(8) 32(8)"));
    CHECK(connected("0(0) 1(4) 2(5) 7(5) 24(5)"));
    CHECK(connected("20(6) 6(7) 2(7) 1(6) 0(0) 1(4) 2(5) 3(5) 10(5) 35(5)"));
    CHECK(connected("24(4) 6(4) 2(4) 1(3)"));
    CHECK(connected("24(2) 6(2) 2(2) 1(1)"));
}

TEST_CASE("adjacency is symmetric and vertices carry three tiles") {
    TilingBall ball(6);
    for (int c = 0; c < ball.cell_count(); ++c) {
        auto nb = ball.neighbors_raw(c);
        for (int k = 0; k < 8; ++k) {
            int n = nb[static_cast<std::size_t>(k)];
            if (n == TilingBall::kNoCell) continue;
            CHECK(ball.side_of(n, c) >= 0); // symmetry
        }
        if (!ball.is_interior(c)) continue;
        // consecutive neighbors in the cyclic order share an edge with each
        // other: every vertex is surrounded by exactly three tiles
        for (int k = 0; k < 8; ++k) {
            int a = nb[static_cast<std::size_t>(k)];
            int b = nb[static_cast<std::size_t>((k + 1) & 7)];
            CHECK(ball.side_of(a, b) >= 0);
        }
    }
}

TEST_CASE("numbering is a contiguous bijection per sector") {
    TilingBall ball(4);
    std::set<std::pair<int, unsigned>> seen;
    for (int c = 0; c < ball.cell_count(); ++c) {
        CellId id = ball.cell(c);
        CHECK(seen.insert({id.sector, id.index}).second);
        CHECK(ball.ref(id) == c);
    }
    for (int s = 1; s <= 8; ++s)
        for (unsigned i = 1; i <= static_cast<unsigned>(ball.per_sector_count()); ++i)
            CHECK(seen.contains({s, i}));
}

TEST_CASE("boundary cells have no full neighborhood") {
    TilingBall ball(2);
    CHECK_THROWS_AS(ball.neighbors(parse_label("6(1)")), Error); // level 2 is the rim here
    CHECK_NOTHROW(ball.neighbors(parse_label("2(1)")));
    try {
        ball.neighbors(parse_label("20(5)"));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::boundary_cell);
    }
}

TEST_CASE("adjacency export is stable") {
    TilingBall ball(1);
    std::ostringstream a, b;
    ball.export_adjacency(a);
    ball.export_adjacency(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 30) == "0(0): 1(1) 1(2) 1(3) 1(4) 1(5)");
}
