#include "hypeca/verify.hpp"

#include <algorithm>
#include <ostream>

namespace hypeca {

TableOutcome compare_table(const TilingBall& ball, const GoldenTable& table, const FiringLog& log) {
    TableOutcome outcome;
    outcome.table = table.name;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        int t = table.t0 + static_cast<int>(r);
        int st = t + table.offset;
        if (st < 0 || st >= static_cast<int>(log.steps.size())) {
            outcome.error = "run too short for row t=" + std::to_string(t);
            return outcome;
        }
        for (std::size_t c = 0; c < table.cells.size(); ++c) {
            int ref = ball.ref(table.cells[c]);
            int got = log.steps[static_cast<std::size_t>(st)].rule_at(ref);
            if (got == 0) got = 1; // quiescent cells fire rule 1 implicitly
            int expected = table.rows[r][c];
            if (got != expected) {
                outcome.first_divergence = Divergence{table.name, table.cells[c], t, expected, got};
                return outcome;
            }
        }
    }
    outcome.pass = true;
    return outcome;
}

bool pattern_window_match(const std::vector<int>& fired, const std::vector<int>& pattern, const RuleTable& rules) {
    if (pattern.empty() || fired.size() < pattern.size()) return false;
    auto quiet = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) {
            if (fired[i] == 1) continue;
            if (rules.at_id(fired[i]).state_changing()) return false;
        }
        return true;
    };
    for (std::size_t start = 0; start + pattern.size() <= fired.size(); ++start) {
        bool here = true;
        for (std::size_t i = 0; i < pattern.size() && here; ++i) here = fired[start + i] == pattern[i];
        if (here && quiet(0, start) && quiet(start + pattern.size(), fired.size())) return true;
    }
    return false;
}

namespace {

std::vector<int> fired_sequence(const FiringLog& log, int ref) {
    std::vector<int> seq;
    seq.reserve(log.steps.size());
    for (const StepLog& s : log.steps) {
        int id = s.rule_at(ref);
        seq.push_back(id == 0 ? 1 : id);
    }
    return seq;
}

} // namespace

ScenarioOutcome verify_scenario(const TilingBall& ball, const RuleTable& rules, const StructureSpec& spec,
                                const ScenarioSpec& sc, const StructureInstance& instance, const GoldenSet& golden) {
    ScenarioOutcome outcome;
    outcome.structure = spec.name;
    outcome.scenario = sc.name;

    RunResult result{};
    try {
        if (!is_fixed_point(instance.idle, instance.orient, rules)) {
            outcome.error = "idle configuration is not a fixed point";
            return outcome;
        }
        Configuration start = inject(instance, sc);
        result = run(std::move(start), instance.orient, rules, sc.steps);
    } catch (const Error& e) {
        outcome.error = e.what();
        return outcome;
    }

    for (const StepLog& s : result.log.steps)
        for (const Firing& f : s.firings) outcome.fired_rules.insert(f.rule);
    // cells untouched by any rule above still fire rule 1 implicitly
    outcome.fired_rules.insert(1);

    bool all = true;
    for (const GoldenTable& table : golden.tables) {
        if (table.structure != spec.name || table.scenario != sc.name) continue;
        TableOutcome t = compare_table(ball, table, result.log);
        all = all && t.pass;
        outcome.tables.push_back(std::move(t));
    }
    for (const GoldenPattern& pat : golden.patterns) {
        if (pat.structure != spec.name || pat.scenario != sc.name) continue;
        for (const auto& [cell, ids] : pat.entries) {
            TableOutcome t;
            t.table = pat.name + " " + format_label(cell);
            t.pass = pattern_window_match(fired_sequence(result.log, ball.ref(cell)), ids, rules);
            if (!t.pass) t.error = "pattern window not found (or noisy surroundings)";
            all = all && t.pass;
            outcome.tables.push_back(std::move(t));
        }
    }
    outcome.expectations = check_expectations(instance, sc, result.history, result.log);
    all = all && outcome.expectations.all_pass();
    outcome.pass = all;
    return outcome;
}

namespace {

SuiteReport verify_selected(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                            const std::string& solved_dir, const std::string& only_table) {
    SuiteReport report;
    report.all_pass = true;
    for (const StructureSpec& spec : structure_registry()) {
        for (const ScenarioSpec& sc : spec.scenarios) {
            bool bound = false;
            GoldenSet scoped;
            for (const GoldenTable& t : golden.tables)
                if (t.structure == spec.name && t.scenario == sc.name && (only_table.empty() || t.name == only_table)) {
                    scoped.tables.push_back(t);
                    bound = true;
                }
            for (const GoldenPattern& p : golden.patterns)
                if (p.structure == spec.name && p.scenario == sc.name && (only_table.empty() || p.name == only_table)) {
                    scoped.patterns.push_back(p);
                    bound = true;
                }
            if (!only_table.empty() && !bound) continue;
            ScenarioOutcome outcome;
            try {
                StructureInstance inst = instance_for_scenario(ball, spec, sc, solved_dir);
                outcome = verify_scenario(ball, rules, spec, sc, inst, scoped);
            } catch (const Error& e) {
                outcome.structure = spec.name;
                outcome.scenario = sc.name;
                outcome.error = e.what();
            }
            report.all_pass = report.all_pass && outcome.pass;
            report.fired_rules.insert(outcome.fired_rules.begin(), outcome.fired_rules.end());
            report.scenarios.push_back(std::move(outcome));
        }
    }
    if (report.scenarios.empty()) fail(Errc::missing_golden, "nothing to verify");
    return report;
}

} // namespace

SuiteReport verify_all(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                       const std::string& solved_dir) {
    if (golden.tables.empty()) fail(Errc::missing_golden, "golden table set is empty");
    return verify_selected(ball, rules, golden, solved_dir, {});
}

SuiteReport verify_table(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                         const std::string& table_tag, const std::string& solved_dir) {
    return verify_selected(ball, rules, golden, solved_dir, table_tag);
}

void print_report(const SuiteReport& report, std::ostream& out) {
    for (const ScenarioOutcome& sc : report.scenarios) {
        out << (sc.pass ? "PASS" : "FAIL") << " " << sc.structure << "/" << sc.scenario;
        if (!sc.error.empty()) out << " error: " << sc.error;
        out << "\n";
        for (const TableOutcome& t : sc.tables) {
            out << "  " << (t.pass ? "ok  " : "FAIL") << " " << t.table;
            if (t.first_divergence)
                out << " first divergence at " << format_label(t.first_divergence->cell) << " t="
                    << t.first_divergence->t << " expected " << t.first_divergence->expected << " got "
                    << t.first_divergence->got;
            if (!t.error.empty()) out << " (" << t.error << ")";
            out << "\n";
        }
        for (const auto& e : sc.expectations.items) {
            out << "  " << (e.pass ? "ok  " : "FAIL") << " expect " << e.expect;
            if (!e.detail.empty()) out << " (" << e.detail << ")";
            out << "\n";
        }
    }
    out << (report.all_pass ? "suite: PASS" : "suite: FAIL") << "\n";
}

} // namespace hypeca
