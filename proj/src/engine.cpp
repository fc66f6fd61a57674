#include "hypeca/engine.hpp"

#include <algorithm>

namespace hypeca {

void Configuration::set(int ref, State s) {
    if (s == State::B)
        black_.insert(ref);
    else
        black_.erase(ref);
}

std::vector<int> Configuration::support_sorted() const {
    std::vector<int> cells(black_.begin(), black_.end());
    std::sort(cells.begin(), cells.end());
    return cells;
}

int Orientation::offset(int ref) const {
    auto it = offset_.find(ref);
    if (it == offset_.end()) fail(Errc::missing_orientation, "no orientation for cell handle " + std::to_string(ref));
    return it->second;
}

int StepLog::rule_at(int cell) const {
    auto it = std::lower_bound(firings.begin(), firings.end(), cell,
                               [](const Firing& f, int c) { return f.cell < c; });
    return (it != firings.end() && it->cell == cell) ? it->rule : 0;
}

std::pair<State, Context> oriented_context(const Configuration& config, const Orientation& orient, int ref) {
    const TilingBall& ball = config.ball();
    auto nb = ball.neighbors_raw(ref);
    int off = orient.offset(ref);
    Context ctx;
    for (int j = 0; j < 8; ++j) {
        int n = nb[static_cast<std::size_t>((off + j) & 7)];
        ctx[static_cast<std::size_t>(j)] = n == TilingBall::kNoCell ? State::W : config.at(n);
    }
    return {config.at(ref), ctx};
}

namespace {

std::vector<int> active_cells(const Configuration& config, const std::vector<int>& watch) {
    const TilingBall& ball = config.ball();
    std::vector<int> cells = config.support_sorted();
    std::size_t support_count = cells.size();
    for (std::size_t i = 0; i < support_count; ++i)
        for (int n : ball.neighbors_raw(cells[i]))
            if (n != TilingBall::kNoCell) cells.push_back(n);
    cells.insert(cells.end(), watch.begin(), watch.end());
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

bool all_white_ring(const Configuration& config, int ref) {
    for (int n : config.ball().neighbors_raw(ref))
        if (n != TilingBall::kNoCell && config.at(n) == State::B) return false;
    return true;
}

} // namespace

StepResult step(const Configuration& config, const Orientation& orient, const RuleTable& table,
                const std::vector<int>& watch) {
    const TilingBall& ball = config.ball();
    StepResult result{Configuration(ball), StepLog{}};
    int guard_level = ball.levels() - 1; // outermost two levels must stay quiet

    for (int ref : active_cells(config, watch)) {
        State current = config.at(ref);
        if (current == State::W && all_white_ring(config, ref)) continue; // implicit rule 1
        auto [cur, ctx] = oriented_context(config, orient, ref);
        const Rule* rule = table.match(cur, ctx);
        if (!rule) {
            std::string c;
            for (State s : ctx) c += to_char(s);
            fail(Errc::missing_rule, "no rule for cell " + format_label(ball.cell(ref)) + " state " +
                                         std::string(1, to_char(cur)) + " context " + c);
        }
        if (rule->next != current && ball.level(ref) >= guard_level)
            fail(Errc::boundary_activity,
                 "state change at boundary cell " + format_label(ball.cell(ref)) + "; ball too small");
        if (rule->next == State::B) result.config.set(ref, State::B);
        result.log.firings.push_back({ref, rule->id});
    }
    return result;
}

RunResult run(Configuration config, const Orientation& orient, const RuleTable& table, int n_steps,
              const std::vector<int>& watch) {
    RunResult result;
    result.history.reserve(static_cast<std::size_t>(std::max(0, n_steps)) + 1);
    result.history.push_back(std::move(config));
    result.log.steps.reserve(static_cast<std::size_t>(std::max(0, n_steps)));
    for (int s = 0; s < n_steps; ++s) {
        StepResult next = step(result.history.back(), orient, table, watch);
        result.log.steps.push_back(std::move(next.log));
        result.history.push_back(std::move(next.config));
    }
    return result;
}

bool is_fixed_point(const Configuration& config, const Orientation& orient, const RuleTable& table) {
    return step(config, orient, table).config == config;
}

} // namespace hypeca
