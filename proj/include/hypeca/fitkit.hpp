#pragma once

#include "hypeca/golden.hpp"
#include "hypeca/structures.hpp"

namespace hypeca {

// Per-cell state sequence recovered from a table column: states[r] at row r,
// plus the state after the last row.
struct CellTimeline {
    CellId cell;
    std::vector<State> states;
};

std::vector<CellTimeline> reconstruct_timeline(const GoldenTable& table, const RuleTable& rules);

struct FitResult {
    SolvedLayout layout;
    std::vector<std::string> notes; // ambiguities, inferred milestones, extensions
};

// Reconstructs a structure's layout from its golden traces: solves every
// active cell's side-1 choice, infers the milestones the prose does not list,
// extends exit tracks far enough for the scheduled runs, and closes the loop
// by re-simulating every scenario against its tables before returning.
FitResult fit_structure(const TilingBall& ball, const RuleTable& rules, const StructureSpec& spec,
                        const GoldenSet& golden);

// Fits every registered structure and writes the solved layout files.
std::vector<FitResult> assemble_solved_assets(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                                              const std::string& out_dir);

} // namespace hypeca
