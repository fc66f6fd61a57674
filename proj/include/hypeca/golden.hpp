#pragma once

#include <string>
#include <vector>

#include "hypeca/rules.hpp"
#include "hypeca/tiling.hpp"

namespace hypeca {

// One transcribed execution table: per watched cell and per time row the rule
// id the automaton applied there, with the state-changing entries marked.
struct GoldenTable {
    std::string name;      // paper tag (file stem)
    std::string structure; // binding
    std::string scenario;
    int offset = 1;        // sim pre-step time = row time + offset
    int t0 = 1;            // first row time
    std::vector<CellId> cells;
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<bool>> red;

    int t_end() const { return t0 + static_cast<int>(rows.size()) - 1; }
};

// Per-cell rule sequence with no time column; matched as a contiguous window
// of the cell's full firing record.
struct GoldenPattern {
    std::string name;
    std::string structure;
    std::string scenario;
    std::vector<std::pair<CellId, std::vector<int>>> entries;
};

GoldenTable load_golden_table(const std::string& path);
GoldenPattern load_golden_pattern(const std::string& path);

struct GoldenSet {
    std::vector<GoldenTable> tables;
    std::vector<GoldenPattern> patterns;
};

// Loads every *.tsv / *.pat under the directory; missing_golden when empty.
GoldenSet load_golden_dir(const std::string& dir);

// Transcription guards: red markers must flag exactly the state-changing
// rules, and down each column the fired rule's next state must equal the next
// row's current state (InconsistentTrace otherwise).
void validate_golden_table(const GoldenTable& table, const RuleTable& rules);

// Per-cell state sequence reconstructed from a validated column:
// states[r] is the cell's state at row r (current of the rule fired there),
// plus one trailing entry for the state after the last row.
std::vector<State> reconstruct_column_states(const GoldenTable& table, int column, const RuleTable& rules);

} // namespace hypeca
