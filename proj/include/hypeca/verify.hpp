#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypeca/golden.hpp"
#include "hypeca/structures.hpp"

namespace hypeca {

struct Divergence {
    std::string table;
    CellId cell;
    int t = 0;
    int expected = 0;
    int got = 0;
};

struct TableOutcome {
    std::string file;
    std::string table;
    bool pass = false;
    std::optional<Divergence> first_divergence;
    std::string error;
};

struct ScenarioOutcome {
    std::string structure;
    std::string scenario;
    bool pass = false;
    std::vector<TableOutcome> tables;
    ExpectationReport expectations;
    std::string error;
    std::set<int> fired_rules;
};

struct SuiteReport {
    std::vector<ScenarioOutcome> scenarios;
    std::set<int> fired_rules;
    bool all_pass = false;
};

// Compares a run's log with a transcribed table; log step s holds the rules
// applied to the configuration at pre-step time s = row time + offset.
TableOutcome compare_table(const TilingBall& ball, const GoldenTable& table, const FiringLog& log);

// A pattern matches when the listed ids occur as a contiguous window of the
// cell's full firing record and everything outside the window leaves the
// cell's state unchanged (implicit rule 1 included).
bool pattern_window_match(const std::vector<int>& fired, const std::vector<int>& pattern, const RuleTable& rules);

ScenarioOutcome verify_scenario(const TilingBall& ball, const RuleTable& rules, const StructureSpec& spec,
                                const ScenarioSpec& sc, const StructureInstance& instance, const GoldenSet& golden);

// Runs every scenario that has golden bindings plus the idle fixed-point
// checks; exit contract: 0 pass / 1 mismatch / 2 infrastructure error.
SuiteReport verify_all(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                       const std::string& solved_dir = {});

// Scenarios bound to one paper table tag only.
SuiteReport verify_table(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                         const std::string& table_tag, const std::string& solved_dir = {});

void print_report(const SuiteReport& report, std::ostream& out);

} // namespace hypeca
