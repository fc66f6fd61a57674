#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypeca/rules.hpp"
#include "hypeca/tiling.hpp"

namespace hypeca {

// Sparse two-state configuration: only black cells are stored, everything
// else reads white (the plane outside the support is quiescent).
class Configuration {
public:
    explicit Configuration(const TilingBall& ball) : ball_(&ball) {}

    const TilingBall& ball() const { return *ball_; }
    State at(int ref) const { return black_.contains(ref) ? State::B : State::W; }
    void set(int ref, State s);
    bool empty() const { return black_.empty(); }
    std::vector<int> support_sorted() const;

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.black_ == b.black_;
    }

private:
    const TilingBall* ball_;
    std::unordered_set<int> black_;
};

// Which canonical neighbor is side 1, per cell; sides then proceed along the
// canonical (counterclockwise) cycle.
class Orientation {
public:
    void set(int ref, int offset) { offset_[ref] = offset & 7; }
    bool defined(int ref) const { return offset_.contains(ref); }
    int offset(int ref) const; // missing_orientation if undefined
    std::size_t size() const { return offset_.size(); }

private:
    std::unordered_map<int, int> offset_;
};

struct Firing {
    int cell = 0;
    int rule = 0;
};

// Rules applied per step, sorted by cell handle; step s of a run records the
// rules applied to the configuration at pre-step time s.
struct StepLog {
    std::vector<Firing> firings;
    int rule_at(int cell) const;
};

struct FiringLog {
    std::vector<StepLog> steps;
};

std::pair<State, Context> oriented_context(const Configuration& config, const Orientation& orient, int ref);

struct StepResult {
    Configuration config;
    StepLog log;
};

// Synchronous update of every active cell (black, or any black neighbor, or
// in `watch`) against the pre-step configuration. Quiescent white cells fire
// rule 1 implicitly and are not logged.
StepResult step(const Configuration& config, const Orientation& orient, const RuleTable& table,
                const std::vector<int>& watch = {});

struct RunResult {
    std::vector<Configuration> history; // configurations at pre-step times 0..n
    FiringLog log;                      // log.steps[s] applies to history[s]

    const Configuration& final_config() const { return history.back(); }
};

RunResult run(Configuration config, const Orientation& orient, const RuleTable& table, int n_steps,
              const std::vector<int>& watch = {});

bool is_fixed_point(const Configuration& config, const Orientation& orient, const RuleTable& table);

} // namespace hypeca
