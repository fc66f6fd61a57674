#include "doctest.h"

#include <set>

#include "hypeca/assets.hpp"
#include "hypeca/fitkit.hpp"
#include "hypeca/golden.hpp"

using namespace hypeca;

namespace {
const RuleTable& shipped() {
    static RuleTable table = load_rules_file(asset_path("rules.txt"));
    return table;
}
const GoldenSet& golden() {
    static GoldenSet set = load_golden_dir(asset_path("golden"));
    return set;
}
} // namespace

TEST_CASE("the transcribed table set covers every published execution table") {
    std::set<std::string> tags;
    for (const GoldenTable& t : golden().tables) tags.insert(t.name);
    for (const GoldenPattern& p : golden().patterns) tags.insert(p.name);
    for (const char* tag : {"evsh", "evshb", "evsahb", "evsah", "evdh", "evdhb", "evdahb", "evdah", "rmiles",
                            "efxsg", "efxsd", "efxd", "rmilfx", "edbl", "rmildbl", "esel", "rmilsel", "ectrlb",
                            "ectrlo", "rctrl43", "ecaptw", "ecaptb"})
        CHECK(tags.contains(tag));
    CHECK(golden().tables.size() == 23);
}

TEST_CASE("every golden table chains and its red marks are the state changes") {
    for (const GoldenTable& t : golden().tables) {
        INFO(t.name);
        CHECK_NOTHROW(validate_golden_table(t, shipped()));
    }
}

TEST_CASE("golden bindings reference registered scenarios") {
    for (const GoldenTable& t : golden().tables) {
        INFO(t.name << " -> " << t.structure << "/" << t.scenario);
        CHECK_NOTHROW(structure_spec(t.structure).scenario(t.scenario));
    }
    for (const GoldenPattern& p : golden().patterns) {
        INFO(p.name << " -> " << p.structure << "/" << p.scenario);
        CHECK_NOTHROW(structure_spec(p.structure).scenario(p.scenario));
    }
}

TEST_CASE("timeline reconstruction recovers the states behind the rule ids") {
    // the 2(8) column of the clockwise trace reads 18, 24, 30, 16...: the cell
    // goes white, black, white, white
    const GoldenTable* evsh = nullptr;
    for (const GoldenTable& t : golden().tables)
        if (t.name == "evsh") evsh = &t;
    REQUIRE(evsh);
    auto timelines = reconstruct_timeline(*evsh, shipped());
    const CellTimeline* col = nullptr;
    for (const auto& tl : timelines)
        if (tl.cell == parse_label("2(8)")) col = &tl;
    REQUIRE(col);
    REQUIRE(col->states.size() == 10); // 9 rows plus the state after the last
    CHECK(col->states[0] == State::W); // rule 18
    CHECK(col->states[1] == State::B); // rule 24
    CHECK(col->states[2] == State::W); // rule 30
    CHECK(col->states[3] == State::W); // rule 16
}

TEST_CASE("a rule sequence that cannot chain is rejected") {
    GoldenTable t;
    t.name = "synthetic";
    t.structure = "track";
    t.scenario = "simple-cw-right";
    t.cells = {parse_label("2(8)")};
    t.t0 = 1;
    t.rows = {{18}, {16}}; // 18 turns the cell black, 16 expects it white
    t.red = {{true}, {false}};
    CHECK_THROWS_AS(validate_golden_table(t, shipped()), Error);
    try {
        validate_golden_table(t, shipped());
    } catch (const Error& e) {
        CHECK(e.code() == Errc::inconsistent_trace);
    }
}

TEST_CASE("a wrong red marker is rejected") {
    GoldenTable t;
    t.name = "synthetic";
    t.cells = {parse_label("2(8)")};
    t.t0 = 1;
    t.rows = {{16}};
    t.red = {{true}}; // rule 16 preserves the state
    CHECK_THROWS_AS(validate_golden_table(t, shipped()), Error);
}

TEST_CASE("an empty golden directory is an error, not a vacuous pass") {
    CHECK_THROWS_AS(load_golden_dir(asset_path("no-such-dir")), Error);
}
