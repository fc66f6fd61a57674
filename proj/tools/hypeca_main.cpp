#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "hypeca/assets.hpp"
#include "hypeca/fitkit.hpp"
#include "hypeca/render.hpp"
#include "hypeca/verify.hpp"

namespace {

using namespace hypeca;

int cmd_tiling(int levels, const std::string& out_path) {
    TilingBall ball(levels);
    std::cout << "levels " << ball.levels() << ": " << ball.cell_count() << " cells (" << ball.per_sector_count()
              << " per sector)\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        ball.export_adjacency(out);
        std::cout << "adjacency written to " << out_path << "\n";
    }
    return 0;
}

int cmd_rules_check(const std::string& rules_path) {
    RuleTable table = load_rules_file(rules_path);
    CoherenceReport report = table.check_coherence();
    std::cout << table.size() << " rules, " << report.conflicts.size() << " conflicts, "
              << report.exact_duplicates.size() << " exact duplicates\n";
    for (const auto& c : report.conflicts)
        std::cout << "conflict: rule " << c.first_id << " vs rule " << c.second_id << "\n";
    for (const auto& d : report.exact_duplicates)
        std::cout << "duplicate: rule " << d.first_id << " vs rule " << d.second_id << "\n";
    return report.conflicts.empty() ? 0 : 1;
}

int cmd_run(const std::string& structure, const std::string& scenario, int steps, const std::string& trace_out) {
    TilingBall ball(6);
    RuleTable rules = load_rules_file(asset_path("rules.txt"));
    const StructureSpec& spec = structure_spec(structure);
    const ScenarioSpec& sc = spec.scenario(scenario);
    StructureInstance inst = instance_for_scenario(ball, spec, sc);
    Configuration start = inject(inst, sc);
    int n = steps > 0 ? steps : sc.steps;
    RunResult result = run(std::move(start), inst.orient, rules, n);
    std::cout << structure << "/" << scenario << ": " << n << " steps, final support "
              << result.final_config().support_sorted().size() << " cells\n";
    if (!trace_out.empty()) {
        std::set<int> cells;
        for (const StepLog& s : result.log.steps)
            for (const Firing& f : s.firings) cells.insert(f.cell);
        std::ofstream out(trace_out);
        out << "t";
        for (int c : cells) out << "\t" << format_label(ball.cell(c));
        out << "\n";
        for (std::size_t st = 0; st < result.log.steps.size(); ++st) {
            out << st;
            for (int c : cells) {
                int id = result.log.steps[st].rule_at(c);
                out << "\t" << (id == 0 ? 1 : id);
            }
            out << "\n";
        }
        std::cout << "trace written to " << trace_out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& table, bool all) {
    TilingBall ball(6);
    RuleTable rules = load_rules_file(asset_path("rules.txt"));
    GoldenSet golden = load_golden_dir(asset_path("golden"));
    SuiteReport report = all ? verify_all(ball, rules, golden) : verify_table(ball, rules, golden, table);
    print_report(report, std::cout);
    return report.all_pass ? 0 : 1;
}

int cmd_render(const std::string& structure, const std::string& scenario, int time, const std::string& out_path,
               int levels) {
    TilingBall ball(levels);
    RuleTable rules = load_rules_file(asset_path("rules.txt"));
    DiskLayout layout = layout_ball(ball);
    Configuration config(ball);
    std::map<std::string, std::vector<CellId>> highlights;
    if (!structure.empty()) {
        const StructureSpec& spec = structure_spec(structure);
        if (scenario.empty()) {
            StructureInstance inst = build_structure(ball, structure);
            config = inst.idle;
            highlights = inst.paths;
        } else {
            const ScenarioSpec& sc = spec.scenario(scenario);
            StructureInstance inst = instance_for_scenario(ball, spec, sc);
            RunResult result = run(inject(inst, sc), inst.orient, rules, std::max(0, time));
            config = result.final_config();
            highlights = inst.paths;
        }
    }
    std::string svg = render_frame(layout, config, highlights);
    std::ofstream out(out_path);
    out << svg;
    std::cout << "frame written to " << out_path << "\n";
    return 0;
}

int cmd_fit(const std::string& golden_dir, const std::string& asset_out) {
    TilingBall ball(6);
    RuleTable rules = load_rules_file(asset_path("rules.txt"));
    GoldenSet golden = load_golden_dir(golden_dir.empty() ? asset_path("golden") : golden_dir);
    auto results = assemble_solved_assets(ball, rules, golden, asset_out);
    for (const FitResult& r : results) {
        std::cout << r.layout.structure << ": " << r.layout.black.size() << " black cells";
        int orient_count = 0;
        for (const auto& [v, entries] : r.layout.orient) orient_count += static_cast<int>(entries.size());
        std::cout << ", " << orient_count << " orientations, " << r.layout.ambiguous.size() << " ambiguous\n";
    }
    std::cout << "solved layouts written to " << asset_out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and verification suite for a two-state CA on the {8,3} tessellation"};
    app.require_subcommand(1);

    auto* tiling = app.add_subcommand("tiling", "build a ball of the tessellation");
    int levels = 5;
    std::string out_path;
    tiling->add_option("--levels", levels, "tree depth (0..12)");
    tiling->add_option("--out", out_path, "write adjacency listing here");

    auto* rules_check = app.add_subcommand("rules-check", "parse a rule file and check coherence");
    std::string rules_path = asset_path("rules.txt");
    rules_check->add_option("--rules", rules_path, "rule file");

    auto* run_cmd = app.add_subcommand("run", "run a scenario and optionally dump its trace");
    std::string structure, scenario, trace_out;
    int steps = 0;
    run_cmd->add_option("--structure", structure, "structure name")->required();
    run_cmd->add_option("--scenario", scenario, "scenario name")->required();
    run_cmd->add_option("--steps", steps, "override step count");
    run_cmd->add_option("--trace-out", trace_out, "write a tab-separated firing trace");

    auto* verify = app.add_subcommand("verify", "reproduce the transcribed execution tables");
    std::string table;
    bool all = false;
    verify->add_option("--table", table, "verify one paper table tag");
    verify->add_flag("--all", all, "verify everything");

    auto* render = app.add_subcommand("render", "emit an SVG frame on the Poincare disk");
    std::string render_structure, render_scenario, render_out = "frame.svg";
    int render_time = 0, render_levels = 4;
    render->add_option("--structure", render_structure, "structure to draw (idle when no scenario)");
    render->add_option("--scenario", render_scenario, "scenario to advance");
    render->add_option("--time", render_time, "steps to advance before drawing");
    render->add_option("--levels", render_levels, "ball depth to draw");
    render->add_option("--out", render_out, "output file");

    auto* fit = app.add_subcommand("fit", "solve orientations/milestones from the golden tables");
    std::string golden_dir, asset_out = asset_path("solved");
    fit->add_option("--golden-dir", golden_dir, "golden table directory");
    fit->add_option("--asset-out", asset_out, "solved layout output directory");

    try {
        app.parse(argc, argv);
        if (tiling->parsed()) return cmd_tiling(levels, out_path);
        if (rules_check->parsed()) return cmd_rules_check(rules_path);
        if (run_cmd->parsed()) return cmd_run(structure, scenario, steps, trace_out);
        if (verify->parsed()) return cmd_verify(table, all || table.empty());
        if (render->parsed()) return cmd_render(render_structure, render_scenario, render_time, render_out, render_levels);
        if (fit->parsed()) return cmd_fit(golden_dir, asset_out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hypeca::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
