#include "doctest.h"

#include "hypeca/assets.hpp"
#include "hypeca/engine.hpp"

using namespace hypeca;

namespace {
const RuleTable& shipped() {
    static RuleTable table = load_rules_file(asset_path("rules.txt"));
    return table;
}

Orientation uniform(const TilingBall& ball, int offset = 0) {
    Orientation o;
    for (int c = 0; c < ball.cell_count(); ++c) o.set(c, offset);
    return o;
}
} // namespace

TEST_CASE("the all-white ball is a fixed point with an empty log") {
    TilingBall ball(3);
    Configuration config(ball);
    Orientation orient; // nothing is active, so no orientations are needed
    CHECK(is_fixed_point(config, orient, shipped()));
    StepResult r = step(config, orient, shipped());
    CHECK(r.log.firings.empty());
    CHECK(r.config.empty());
}

TEST_CASE("an isolated milestone persists under rule 2") {
    TilingBall ball(3);
    Configuration config(ball);
    config.set(0, State::B);
    Orientation orient = uniform(ball);
    CHECK(is_fixed_point(config, orient, shipped()));
    StepResult r = step(config, orient, shipped());
    CHECK(r.log.rule_at(0) == 2);
    // the ring fires its single-black-neighbor witness rules and stays white
    for (const Firing& f : r.log.firings)
        CHECK_FALSE(shipped().at_id(f.rule).state_changing());
}

TEST_CASE("determinism: identical inputs, identical runs") {
    TilingBall ball(3);
    Configuration config(ball);
    config.set(0, State::B);
    config.set(ball.ref(parse_label("9(3)")), State::B);
    // point side 1 of every spectator so its milestone reads at oriented 7
    // (rule 171); the milestones themselves see nothing but white
    Orientation orient;
    for (int c = 0; c < ball.cell_count(); ++c) {
        int off = 0;
        for (int k = 0; k < 8; ++k) {
            int n = ball.neighbor(c, k);
            if (n != TilingBall::kNoCell && config.at(n) == State::B) off = (k - 6) & 7;
        }
        orient.set(c, off);
    }
    RunResult a = run(config, orient, shipped(), 5);
    RunResult b = run(config, orient, shipped(), 5);
    REQUIRE(a.log.steps.size() == b.log.steps.size());
    for (std::size_t s = 0; s < a.log.steps.size(); ++s) {
        REQUIRE(a.log.steps[s].firings.size() == b.log.steps[s].firings.size());
        for (std::size_t i = 0; i < a.log.steps[s].firings.size(); ++i) {
            CHECK(a.log.steps[s].firings[i].cell == b.log.steps[s].firings[i].cell);
            CHECK(a.log.steps[s].firings[i].rule == b.log.steps[s].firings[i].rule);
        }
    }
    CHECK(a.final_config() == b.final_config());
}

TEST_CASE("locality: distant cells never enter the log") {
    TilingBall ball(4);
    Configuration config(ball);
    config.set(0, State::B);
    Orientation orient = uniform(ball);
    RunResult r = run(config, orient, shipped(), 3);
    int far = ball.ref(parse_label("35(5)")); // graph distance 4 from the center
    for (const StepLog& s : r.log.steps) CHECK(s.rule_at(far) == 0);
    CHECK(r.final_config().at(far) == State::W);
}

TEST_CASE("a neighborhood outside the table raises MissingRule") {
    TilingBall ball(3);
    Configuration config(ball);
    // 1(8) would see black at oriented 6 and 7 only; no rule covers that
    config.set(0, State::B);
    config.set(ball.ref(parse_label("1(1)")), State::B);
    config.set(ball.ref(parse_label("1(2)")), State::B);
    Orientation orient = uniform(ball);
    try {
        step(config, orient, shipped());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::missing_rule);
    }
}

TEST_CASE("a state change on the outer two levels raises BoundaryActivity") {
    TilingBall ball(2);
    Configuration config(ball);
    // 3(1) at level 1 sees black at oriented 6,7,8 and rule 117 would flip it
    config.set(ball.ref(parse_label("4(1)")), State::B);
    config.set(ball.ref(parse_label("1(1)")), State::B);
    config.set(ball.ref(parse_label("2(1)")), State::B);
    Orientation orient = uniform(ball);
    try {
        step(config, orient, shipped());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::boundary_activity);
    }
}

TEST_CASE("active cells without an orientation raise MissingOrientation") {
    TilingBall ball(3);
    Configuration config(ball);
    config.set(0, State::B);
    Orientation orient;
    try {
        step(config, orient, shipped());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::missing_orientation);
    }
}

TEST_CASE("oriented context reads counterclockwise from side 1") {
    TilingBall ball(3);
    Configuration config(ball);
    config.set(ball.ref(parse_label("1(3)")), State::B);
    Orientation orient;
    orient.set(0, 2); // side 1 of 0(0) = canonical neighbor 1(3)
    auto [cur, ctx] = oriented_context(config, orient, 0);
    CHECK(cur == State::W);
    CHECK(ctx[0] == State::B);
    for (int j = 1; j < 8; ++j) CHECK(ctx[static_cast<std::size_t>(j)] == State::W);
    orient.set(0, 3);
    auto [cur2, ctx2] = oriented_context(config, orient, 0);
    CHECK(cur2 == State::W);
    CHECK(ctx2[7] == State::B); // one step clockwise in the offset moves the reading window
}
