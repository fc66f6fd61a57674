#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypeca/engine.hpp"

namespace hypeca {

enum class StructureKind { TrackLoop, FixedSwitch, Fork, Doubler, Selector, Controller, Sensor };

std::string structure_name(StructureKind kind); // registry key ("track", "fixed-switch", ...)

// A locomotive passage over consecutive cells. t0 is the pre-step time at
// which the front occupies cells[0]; a double locomotive's rear follows one
// step behind (and starts on cells[0] while the front is already on cells[1]).
struct OccRun {
    std::vector<std::string> cells;
    bool dbl = false;
    int t0 = 0;
    bool extend = false; // fit may append successor cells past the end
};

// Explicit state override at given pre-step times (transient spurs, sensor
// flashes).
struct CellOverride {
    std::string cell;
    State state = State::B;
    std::vector<int> at;
};

// A colour cell changing state once, at pre-step time `at`, and keeping the
// new state afterwards.
struct CellFlip {
    std::string cell;
    int at = 0;
    State to = State::B;
};

struct ScenarioSpec {
    std::string name;
    std::string variant = "-"; // orientation variant
    int steps = 0;
    std::vector<OccRun> runs;
    std::vector<CellOverride> overrides;
    std::vector<CellFlip> flips;
    std::map<std::string, State> colour; // per-scenario colour-cell states
    std::vector<std::string> expects;    // behavioral assertions, see check_expectations
};

struct StructureSpec {
    std::string name;
    std::vector<std::string> variants{{"-"}};
    std::map<std::string, std::vector<std::string>> paths; // prose-derived cell lists
    std::vector<std::pair<std::string, State>> pinned;     // prose-pinned idle states
    std::map<std::string, std::string> named;              // role -> cell label
    std::string colour_cell;                               // empty if none
    std::vector<ScenarioSpec> scenarios;
    std::vector<int> prefer_rules; // fit tie-break hints

    const ScenarioSpec& scenario(const std::string& name) const;
};

const std::vector<StructureSpec>& structure_registry();
const StructureSpec& structure_spec(const std::string& name);

// Solved layout produced by the fit: everything the prose does not pin.
struct SolvedLayout {
    std::string structure;
    std::string colour_cell;
    std::vector<CellId> black; // idle support, colour cell in its B state
    std::map<std::string, std::vector<std::pair<CellId, int>>> orient; // variant -> (cell, side-1 canonical index)
    std::map<std::string, std::vector<CellId>> paths;                  // resolved paths incl. extensions
    std::vector<std::pair<std::string, CellId>> ambiguous;             // variant, cell
    std::vector<CellId> unconstrained;
};

SolvedLayout load_solved_layout(const std::string& path);
void write_solved_layout(const SolvedLayout& layout, const std::string& path, const StructureSpec& spec);

struct StructureInstance {
    const TilingBall* ball = nullptr;
    std::string structure;
    std::string variant;
    std::optional<State> colour;
    Configuration idle;
    Orientation orient;
    std::map<std::string, CellId> named;
    std::map<std::string, std::vector<CellId>> paths;

    StructureInstance(const TilingBall& b) : ball(&b), idle(b) {}
};

// Builds the idle instance from the prose-derived spec plus the solved asset
// (UnresolvedLayout if the asset lacks cells or orientations the scenarios
// need). Colour selects the controller/sensor variant; defaults to black.
StructureInstance build_structure(const TilingBall& ball, const std::string& structure,
                                  const std::string& variant = "-", std::optional<State> colour = std::nullopt,
                                  const std::string& asset_dir_override = {});
StructureInstance build_structure(const TilingBall& ball, StructureKind kind, const std::string& variant = "-",
                                  std::optional<State> colour = std::nullopt);

// Instance matching a scenario's variant and colour-cell states.
StructureInstance instance_for_scenario(const TilingBall& ball, const StructureSpec& spec, const ScenarioSpec& sc,
                                        const std::string& asset_dir_override = {});

// Initial configuration: idle plus the scenario's time-0 locomotive cells
// (PathBlocked if an injection cell is already black).
Configuration inject(const StructureInstance& instance, const ScenarioSpec& scenario);

// Occupancy helper shared by injection, fitting, and verification:
// pre-step times at which `cells[i]` of a run is black.
std::vector<int> run_black_times(const OccRun& run, std::size_t index);

struct ExpectationReport {
    struct Item {
        std::string expect;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const;
};

ExpectationReport check_expectations(const StructureInstance& instance, const ScenarioSpec& scenario,
                                     const std::vector<Configuration>& history, const FiringLog& log);

} // namespace hypeca
