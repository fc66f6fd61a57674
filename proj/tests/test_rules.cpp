#include "doctest.h"

#include <set>

#include "hypeca/assets.hpp"
#include "hypeca/rules.hpp"

using namespace hypeca;

namespace {
const RuleTable& shipped() {
    static RuleTable table = load_rules_file(asset_path("rules.txt"));
    return table;
}

Context ctx(const char* s) {
    Context c;
    for (int i = 0; i < 8; ++i) c[static_cast<std::size_t>(i)] = s[i] == 'B' ? State::B : State::W;
    return c;
}
} // namespace

TEST_CASE("shipped table has the 191 rules with their published ranges") {
    const RuleTable& table = shipped();
    REQUIRE(table.size() == 191);
    std::set<int> ids;
    for (const Rule& r : table.rules()) ids.insert(r.id);
    for (int i = 1; i <= 191; ++i) CHECK(ids.contains(i));

    CHECK(table.at_id(1).current == State::W);
    CHECK(table.at_id(1).next == State::W);
    CHECK(table.at_id(2).current == State::B);
    CHECK(table.at_id(24).context == ctx("WBWWWBWB"));
    CHECK(table.at_id(24).next == State::W);
    CHECK(table.at_id(71).context == ctx("BBWBWBBW"));
    CHECK(table.at_id(131).context == ctx("WBBBBWWW"));
    CHECK(table.at_id(191).context == ctx("WBBWWWWW"));
}

TEST_CASE("shipped table is coherent") {
    CoherenceReport report = shipped().check_coherence();
    CHECK(report.conflicts.empty());
    CHECK(report.exact_duplicates.empty());
}

TEST_CASE("an added rule colliding with rule 131 is reported as a conflict") {
    RuleTable table = parse_rules_text(serialize_rules(shipped()) + "999 B WBBBBWWW W\n");
    CoherenceReport report = table.check_coherence();
    REQUIRE(report.conflicts.size() == 1);
    CHECK(report.conflicts[0].first_id == 131);
    CHECK(report.conflicts[0].second_id == 999);
}

TEST_CASE("a verbatim copy is a duplicate warning, not a conflict") {
    RuleTable table = parse_rules_text(serialize_rules(shipped()) + "999 W WWWWWWWW W\n");
    CoherenceReport report = table.check_coherence();
    CHECK(report.conflicts.empty());
    REQUIRE(report.exact_duplicates.size() == 1);
    CHECK(report.exact_duplicates[0].first_id == 1);
}

TEST_CASE("matching is positional with no rotation closure") {
    const RuleTable& table = shipped();
    const Rule* r16 = table.match(State::W, ctx("WBWWWBWB"));
    REQUIRE(r16);
    CHECK(r16->id == 16);
    CHECK(r16->next == State::W);

    const Rule* r2 = table.match(State::B, ctx("WWWWWWWW"));
    REQUIRE(r2);
    CHECK(r2->id == 2);
    CHECK(r2->next == State::B); // isolated milestone persists

    CHECK(table.match(State::W, ctx("BBBBBBBB")) == nullptr);
    // a rotation of rule 16's context does not match rule 16
    const Rule* rot = table.match(State::W, ctx("BWWWBWBW"));
    CHECK((rot == nullptr || rot->id != 16));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_rule_line("16 W WBWWWB W"), Error);   // 6-symbol context
    CHECK_THROWS_AS(parse_rule_line("16 W WBWWWBX W"), Error);  // bad symbol
    CHECK_THROWS_AS(parse_rule_line("x W WWWWWWWW W"), Error);  // bad id
    CHECK_THROWS_AS(parse_rule_line("1 W WWWWWWWW W W"), Error);
    CHECK_THROWS_AS(parse_rules_text("1 W WWWWWWWW W\n1 B WWWWWWWW B\n"), Error); // duplicate id
    try {
        parse_rule_line("16 W WBWWWB W");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::malformed_rule);
    }
}

TEST_CASE("serialize then parse is the identity on the shipped file") {
    std::string text = serialize_rules(shipped());
    RuleTable reparsed = parse_rules_text(text);
    REQUIRE(reparsed.size() == shipped().size());
    for (std::size_t i = 0; i < reparsed.size(); ++i) {
        CHECK(reparsed.rules()[i].id == shipped().rules()[i].id);
        CHECK(reparsed.rules()[i].context == shipped().rules()[i].context);
        CHECK(reparsed.rules()[i].next == shipped().rules()[i].next);
    }
    CHECK(serialize_rules(reparsed) == text);
}
