#include "doctest.h"

#include "hypeca/assets.hpp"
#include "hypeca/fitkit.hpp"
#include "hypeca/verify.hpp"

using namespace hypeca;

namespace {
const TilingBall& ball() {
    static TilingBall b(6);
    return b;
}
const RuleTable& shipped() {
    static RuleTable table = load_rules_file(asset_path("rules.txt"));
    return table;
}
const GoldenSet& golden() {
    static GoldenSet set = load_golden_dir(asset_path("golden"));
    return set;
}

const FitResult& track_fit() {
    static FitResult fit = fit_structure(ball(), shipped(), structure_spec("track"), golden());
    return fit;
}

int orient_of(const FitResult& fit, const char* variant, const char* cell) {
    for (const auto& [c, off] : fit.layout.orient.at(variant))
        if (c == parse_label(cell)) return off;
    return -1;
}

bool black_in(const FitResult& fit, const char* cell) {
    CellId id = parse_label(cell);
    for (const CellId& c : fit.layout.black)
        if (c == id) return true;
    return false;
}
} // namespace

TEST_CASE("track fit recovers the milestone placements the rules imply") {
    const FitResult& fit = track_fit();
    // the three-milestoned cell 2(8) has its milestones at oriented 2, 6, 8;
    // geometrically these are 5(7), 9(8) and 1(8)
    CHECK(black_in(fit, "1(8)"));
    CHECK(black_in(fit, "9(8)"));
    CHECK(black_in(fit, "5(7)"));
    // the four-milestoned 4(8) pins 13(8), 16(8), 5(8) and 1(8)
    CHECK(black_in(fit, "13(8)"));
    CHECK(black_in(fit, "16(8)"));
    CHECK(black_in(fit, "5(8)"));
    // 0(0) and 1(3) carry the tracks around the center
    CHECK(black_in(fit, "0(0)"));
    CHECK(black_in(fit, "1(3)"));
}

TEST_CASE("track fit points side 1 of each track cell at its successor") {
    const FitResult& fit = track_fit();
    const TilingBall& b = ball();
    auto successor = [&](const char* cell, const char* variant) {
        int off = orient_of(fit, variant, cell);
        REQUIRE(off >= 0);
        return format_label(b.cell(b.neighbor(b.ref(parse_label(cell)), off)));
    };
    CHECK(successor("2(8)", "cw") == "1(7)");
    CHECK(successor("1(6)", "cw") == "1(5)");
    CHECK(successor("1(4)", "cw") == "2(4)");
    CHECK(successor("2(8)", "ccw") == "3(8)");
    CHECK(successor("1(4)", "ccw") == "1(5)");
}

TEST_CASE("cw and ccw are the same layout under different orientations") {
    const FitResult& fit = track_fit();
    REQUIRE(fit.layout.orient.contains("cw"));
    REQUIRE(fit.layout.orient.contains("ccw"));
    // one black set serves both directions
    CHECK_FALSE(fit.layout.black.empty());
}

TEST_CASE("the fork fit keeps the central cell black and exercises its rules") {
    FitResult fit = fit_structure(ball(), shipped(), structure_spec("fork"), golden());
    CHECK(black_in(fit, "0(0)"));
    // milestones of the fork cell per rule 100: 2(1), 4(1), 2(2) and 0(0)
    CHECK(black_in(fit, "2(1)"));
    CHECK(black_in(fit, "4(1)"));
    CHECK(black_in(fit, "2(2)"));
}

TEST_CASE("a perturbed trace makes the fit infeasible") {
    GoldenSet corrupted = golden();
    for (GoldenTable& t : corrupted.tables) {
        if (t.name != "evsh") continue;
        // swap one witness rule for another black-current rule so the chain
        // still holds but the neighborhood is wrong
        for (std::size_t c = 0; c < t.cells.size(); ++c)
            if (t.cells[c] == parse_label("2(8)")) t.rows[1][c] = 19;
    }
    CHECK_THROWS_AS(fit_structure(ball(), shipped(), structure_spec("track"), corrupted), Error);
}

TEST_CASE("fixed-switch fit matches the prose milestones and solves 0(0)") {
    FitResult fit = fit_structure(ball(), shipped(), structure_spec("fixed-switch"), golden());
    for (const char* c : {"1(2)", "1(3)", "1(5)", "1(6)", "1(8)"}) CHECK(black_in(fit, c));
    CHECK_FALSE(black_in(fit, "0(0)"));
    // rule 80 sees the left entry at oriented 5 and rule 89 the right entry
    // at oriented 3; both hold exactly when side 1 of 0(0) faces 1(5)
    CHECK(orient_of(fit, "-", "0(0)") == 4);
}
