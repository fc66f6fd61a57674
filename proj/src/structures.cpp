#include "hypeca/structures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hypeca/assets.hpp"

namespace hypeca {
namespace {

std::vector<std::string> cells(const char* spaced) {
    std::istringstream in(spaced);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> reversed(std::vector<std::string> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

std::vector<StructureSpec> make_registry() {
    std::vector<StructureSpec> reg;

    // Plain tracks: two runs around 0(0) (Fig. of assembled track elements),
    // traversed in both directions. cw/ccw share the layout and differ only
    // in each cell's side-1 choice, so they are orientation variants.
    {
        StructureSpec s;
        s.name = "track";
        s.variants = {"cw", "ccw"};
        auto right = cells("17(8) 4(8) 3(8) 2(8) 1(7) 1(6) 1(5) 1(4) 2(4) 5(3) 4(3) 13(3)");
        auto left = cells("32(3) 9(3) 2(3) 1(2) 1(1) 2(1) 6(1) 21(1)");
        s.paths["right"] = right;
        s.paths["left"] = left;
        auto add = [&](const std::string& name, const std::string& variant, int steps,
                       std::vector<std::string> run_cells, bool dbl, const char* last) {
            ScenarioSpec sc;
            sc.name = name;
            sc.variant = variant;
            sc.steps = steps;
            sc.runs.push_back({std::move(run_cells), dbl, 0, false});
            sc.expects = {std::string("black-at ") + last};
            s.scenarios.push_back(std::move(sc));
        };
        add("simple-cw-right", "cw", 11, right, false, "13(3)");
        add("simple-cw-left", "cw", 6, left, false, "6(1)");
        add("simple-ccw-right", "ccw", 11, reversed(right), false, "4(8)");
        add("simple-ccw-left", "ccw", 6, reversed(left), false, "9(3)");
        add("double-cw-right", "cw", 10, right, true, "4(3)");
        add("double-cw-left", "cw", 5, left, true, "2(1)");
        add("double-ccw-right", "ccw", 10, reversed(right), true, "4(8)");
        add("double-ccw-left", "ccw", 5, reversed(left), true, "1(2)");
        reg.push_back(std::move(s));
    }

    // Passive fixed switch: two upper entries joined at 0(0), single exit.
    {
        StructureSpec s;
        s.name = "fixed-switch";
        s.paths["entry-left"] = cells("13(8) 4(8) 5(8) 2(1) 1(1)");
        s.paths["entry-right"] = cells("16(6) 4(6) 5(6) 2(7) 1(7)");
        s.paths["exit"] = cells("1(4) 2(4) 5(3) 4(3) 16(3)");
        s.pinned = {{"0(0)", State::W}, {"1(2)", State::B}, {"1(3)", State::B},
                    {"1(5)", State::B}, {"1(6)", State::B}, {"1(8)", State::B}};
        s.named["centre"] = "0(0)";
        auto through = [&](const char* entry) {
            auto v = cells(entry);
            v.push_back("0(0)");
            for (const auto& c : s.paths.at("exit")) v.push_back(c);
            return v;
        };
        auto add = [&](const std::string& name, int steps, const char* entry, bool dbl) {
            ScenarioSpec sc;
            sc.name = name;
            sc.steps = steps;
            sc.runs.push_back({through(entry), dbl, 0, false});
            sc.expects = {"black-at 4(3)"};
            s.scenarios.push_back(std::move(sc));
        };
        add("simple-left", 9, "13(8) 4(8) 5(8) 2(1) 1(1)", false);
        add("simple-right", 9, "16(6) 4(6) 5(6) 2(7) 1(7)", false);
        add("double-left", 8, "13(8) 4(8) 5(8) 2(1) 1(1)", true);
        add("double-right", 8, "16(6) 4(6) 5(6) 2(7) 1(7)", true);
        reg.push_back(std::move(s));
    }

    // Fork: one simple locomotive in, one out on each branch. 0(0) is black.
    {
        StructureSpec s;
        s.name = "fork";
        s.paths["entry"] = cells("21(2) 6(2) 5(1) 1(1)");
        s.paths["green"] = cells("1(2) 1(3) 3(3) 9(3) 35(3)");
        s.paths["pink"] = cells("1(8) 1(7) 5(7) 6(8) 21(8)");
        s.pinned = {{"0(0)", State::B}};
        s.named["fork-cell"] = "1(1)";
        s.prefer_rules = {119, 120};
        ScenarioSpec sc;
        sc.name = "simple";
        sc.steps = 8;
        sc.runs.push_back({s.paths.at("entry"), false, 0, false});
        sc.runs.push_back({s.paths.at("green"), false, 4, false});
        sc.runs.push_back({s.paths.at("pink"), false, 4, false});
        sc.expects = {"black-at 9(3)", "black-at 35(3)", "black-at 6(8)", "black-at 21(8)"};
        s.scenarios.push_back(std::move(sc));
        reg.push_back(std::move(s));
    }

    // Doubler: fork at 1(1), the two branches rejoin at the fixed switch
    // around 4(4) with a one-step offset, forming a double locomotive.
    {
        StructureSpec s;
        s.name = "doubler";
        s.paths["entry"] = cells("21(2) 6(2) 5(1) 1(1)");
        s.paths["green"] = cells("1(2) 2(3) 3(3) 4(3) 5(3) 2(4) 3(4)");
        s.paths["pink"] = cells("1(8) 1(7) 1(6) 1(5) 2(5) 5(4)");
        s.paths["exit"] = cells("3(4) 4(4) 15(4)");
        s.pinned = {{"0(0)", State::B}};
        s.named["fork-cell"] = "1(1)";
        s.named["switch-centre"] = "4(4)";
        ScenarioSpec sc;
        sc.name = "simple";
        sc.steps = 13;
        sc.runs.push_back({s.paths.at("entry"), false, 0, false});
        sc.runs.push_back({s.paths.at("green"), false, 4, false});
        sc.runs.push_back({s.paths.at("pink"), false, 4, false});
        sc.runs.push_back({s.paths.at("exit"), true, 10, true});
        sc.expects = {"pair-black 4(4) 3(4)", "pair-black 15(4) 4(4)", "black-at 15(4)"};
        s.scenarios.push_back(std::move(sc));
        reg.push_back(std::move(s));
    }

    // Selector: simple locomotives leave through 1(8), double ones send a
    // simple locomotive through 1(4); the 1(5)/1(7) sensors flash.
    {
        StructureSpec s;
        s.name = "selector";
        s.paths["entry"] = cells("20(6) 6(7) 5(6) 1(6)");
        s.paths["pink"] = cells("1(8) 2(8) 9(8) 32(8)");
        s.paths["green"] = cells("1(4) 2(5) 7(5) 24(5)");
        s.pinned = {{"0(0)", State::W}, {"1(5)", State::B}, {"1(7)", State::B}};
        s.named["sensor-left"] = "1(5)";
        s.named["sensor-right"] = "1(7)";
        {
            ScenarioSpec sc;
            sc.name = "simple";
            sc.steps = 8;
            auto through = s.paths.at("entry");
            through.push_back("0(0)");
            for (const auto& c : s.paths.at("pink")) through.push_back(c);
            sc.runs.push_back({std::move(through), false, 0, false});
            sc.overrides.push_back({"1(4)", State::B, {5}}); // discarded green spur
            sc.overrides.push_back({"1(5)", State::W, {5}}); // sensor flash
            sc.expects = {"black-at 9(8)", "never-black 2(5)", "never-black 7(5)"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "double";
            sc.steps = 8;
            auto entry = s.paths.at("entry");
            entry.push_back("0(0)");
            sc.runs.push_back({std::move(entry), true, 0, false});
            sc.runs.push_back({s.paths.at("green"), false, 4, true});
            sc.overrides.push_back({"1(8)", State::B, {4}}); // discarded pink spur
            sc.overrides.push_back({"1(7)", State::W, {4}}); // sensor flash
            sc.expects = {"black-at 7(5)", "never-black 2(8)", "never-black 9(8)"};
            s.scenarios.push_back(std::move(sc));
        }
        reg.push_back(std::move(s));
    }

    // Controller: colour cell 1(3) selects pass (black) or stop (white); a
    // signal locomotive on the side track toggles it.
    {
        StructureSpec s;
        s.name = "controller";
        s.colour_cell = "1(3)";
        s.paths["track"] = cells("20(6) 6(7) 2(7) 1(6) 0(0) 1(4) 2(5) 3(5) 10(5) 35(5)");
        s.paths["signal"] = cells("24(4) 6(4) 2(4)");
        s.named["colour-cell"] = "1(3)";
        {
            ScenarioSpec sc;
            sc.name = "loco-black";
            sc.steps = 8;
            sc.colour["1(3)"] = State::B;
            sc.runs.push_back({s.paths.at("track"), false, 0, false});
            sc.expects = {"black-at 3(5)", "black-at 10(5)", "final 1(3) B"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "loco-white";
            sc.steps = 5;
            sc.colour["1(3)"] = State::W;
            sc.runs.push_back({cells("20(6) 6(7) 2(7) 1(6)"), false, 0, false});
            sc.expects = {"never-black 1(4)", "final 1(3) W", "final-support-equals-idle"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "signal-w2b";
            sc.steps = 4;
            sc.colour["1(3)"] = State::W;
            sc.runs.push_back({s.paths.at("signal"), false, 0, false});
            sc.flips.push_back({"1(3)", 3, State::B});
            sc.expects = {"final 1(3) B"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "signal-b2w";
            sc.steps = 4;
            sc.colour["1(3)"] = State::B;
            sc.runs.push_back({s.paths.at("signal"), false, 0, false});
            sc.flips.push_back({"1(3)", 3, State::W});
            sc.expects = {"final 1(3) W"};
            s.scenarios.push_back(std::move(sc));
        }
        reg.push_back(std::move(s));
    }

    // Sensor: same track as the controller; the colour cell 1(1) flips to
    // black when a locomotive passes a white sensor, a black sensor stops the
    // locomotive, and the side-track signal resets black to white.
    {
        StructureSpec s;
        s.name = "sensor";
        s.colour_cell = "1(1)";
        s.paths["track"] = cells("20(6) 6(7) 2(7) 1(6) 0(0) 1(4) 2(5) 3(5) 10(5) 35(5)");
        s.paths["signal"] = cells("24(2) 6(2) 2(2)");
        s.named["colour-cell"] = "1(1)";
        {
            ScenarioSpec sc;
            sc.name = "loco-white";
            sc.steps = 7;
            sc.colour["1(1)"] = State::W;
            sc.runs.push_back({s.paths.at("track"), false, 0, false});
            sc.flips.push_back({"1(1)", 5, State::B});
            sc.expects = {"black-at 3(5)", "final 1(1) B"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "loco-black";
            sc.steps = 5;
            sc.colour["1(1)"] = State::B;
            sc.runs.push_back({cells("20(6) 6(7) 2(7) 1(6)"), false, 0, false});
            sc.expects = {"never-black 1(4)", "final 1(1) B", "final-support-equals-idle"};
            s.scenarios.push_back(std::move(sc));
        }
        {
            ScenarioSpec sc;
            sc.name = "signal-b2w";
            sc.steps = 4;
            sc.colour["1(1)"] = State::B;
            sc.runs.push_back({s.paths.at("signal"), false, 0, false});
            sc.flips.push_back({"1(1)", 3, State::W});
            sc.expects = {"final 1(1) W"};
            s.scenarios.push_back(std::move(sc));
        }
        reg.push_back(std::move(s));
    }

    return reg;
}

} // namespace

const ScenarioSpec& StructureSpec::scenario(const std::string& sc_name) const {
    for (const auto& sc : scenarios)
        if (sc.name == sc_name) return sc;
    fail(Errc::bad_asset, "structure '" + name + "' has no scenario '" + sc_name + "'");
}

const std::vector<StructureSpec>& structure_registry() {
    static const std::vector<StructureSpec> reg = make_registry();
    return reg;
}

const StructureSpec& structure_spec(const std::string& name) {
    for (const auto& s : structure_registry())
        if (s.name == name) return s;
    fail(Errc::bad_asset, "unknown structure '" + name + "'");
}

std::string structure_name(StructureKind kind) {
    switch (kind) {
    case StructureKind::TrackLoop: return "track";
    case StructureKind::FixedSwitch: return "fixed-switch";
    case StructureKind::Fork: return "fork";
    case StructureKind::Doubler: return "doubler";
    case StructureKind::Selector: return "selector";
    case StructureKind::Controller: return "controller";
    case StructureKind::Sensor: return "sensor";
    }
    fail(Errc::bad_asset, "unknown structure kind");
}

std::vector<int> run_black_times(const OccRun& run, std::size_t index) {
    int i = static_cast<int>(index);
    if (!run.dbl) return {run.t0 + i};
    if (i == 0) return {run.t0};
    return {run.t0 + i - 1, run.t0 + i};
}

SolvedLayout load_solved_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::unresolved_layout, "missing solved layout asset: " + path);
    SolvedLayout layout;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "structure") {
            ls >> layout.structure;
        } else if (kw == "colour-cell") {
            ls >> layout.colour_cell;
        } else if (kw == "cell") {
            std::string label, state;
            ls >> label >> state;
            if (state == "B") layout.black.push_back(parse_label(label));
        } else if (kw == "orient") {
            std::string variant, label;
            int side1 = 0;
            ls >> variant >> label >> side1;
            layout.orient[variant].emplace_back(parse_label(label), side1);
        } else if (kw == "path") {
            std::string name_tok, label;
            ls >> name_tok;
            auto& p = layout.paths[name_tok];
            while (ls >> label) p.push_back(parse_label(label));
        } else if (kw == "ambiguous") {
            std::string variant, label;
            ls >> variant >> label;
            layout.ambiguous.emplace_back(variant, parse_label(label));
        } else if (kw == "unconstrained") {
            std::string label;
            while (ls >> label) layout.unconstrained.push_back(parse_label(label));
        } else if (kw == "inject" || kw == "expect") {
            // scenario lines are informational here; the registry drives runs
        } else {
            fail(Errc::bad_asset, "unknown keyword '" + kw + "' in " + path);
        }
    }
    return layout;
}

void write_solved_layout(const SolvedLayout& layout, const std::string& path, const StructureSpec& spec) {
    std::ofstream out(path);
    if (!out) fail(Errc::io_error, "cannot write solved layout: " + path);
    out << "# solved layout (generated by `hypeca fit`; do not edit by hand)\n";
    out << "structure " << layout.structure << "\n";
    if (!layout.colour_cell.empty()) out << "colour-cell " << layout.colour_cell << "\n";
    for (const CellId& c : layout.black) out << "cell " << format_label(c) << " B\n";
    for (const auto& [variant, entries] : layout.orient)
        for (const auto& [cell, side1] : entries)
            out << "orient " << variant << " " << format_label(cell) << " " << side1 << "\n";
    for (const auto& [name, path_cells] : layout.paths) {
        out << "path " << name;
        for (const CellId& c : path_cells) out << " " << format_label(c);
        out << "\n";
    }
    for (const auto& sc : spec.scenarios) {
        for (const auto& run : sc.runs)
            out << "inject " << (run.dbl ? "double" : "simple") << " " << run.cells.front() << ".." << run.cells.back()
                << " @" << run.t0 << " # " << sc.name << "\n";
        for (const auto& e : sc.expects) out << "expect " << e << " # " << sc.name << "\n";
    }
    for (const auto& [variant, cell] : layout.ambiguous)
        out << "ambiguous " << variant << " " << format_label(cell) << "\n";
    if (!layout.unconstrained.empty()) {
        out << "unconstrained";
        for (const CellId& c : layout.unconstrained) out << " " << format_label(c);
        out << "\n";
    }
}

StructureInstance build_structure(const TilingBall& ball, const std::string& structure, const std::string& variant,
                                  std::optional<State> colour, const std::string& asset_dir_override) {
    const StructureSpec& spec = structure_spec(structure);
    std::string dir = asset_dir_override.empty() ? asset_path("solved") : asset_dir_override;
    SolvedLayout layout = load_solved_layout(dir + "/" + structure + ".txt");

    StructureInstance inst(ball);
    inst.structure = structure;
    inst.variant = variant;
    inst.colour = colour;
    for (const CellId& c : layout.black) inst.idle.set(ball.ref(c), State::B);
    if (!spec.colour_cell.empty()) {
        State want = colour.value_or(State::B);
        inst.idle.set(ball.ref(parse_label(spec.colour_cell)), want);
    } else if (colour.has_value()) {
        fail(Errc::bad_asset, "structure '" + structure + "' has no colour cell");
    }
    auto it = layout.orient.find(variant);
    if (it == layout.orient.end())
        fail(Errc::unresolved_layout, "solved layout for '" + structure + "' lacks variant '" + variant + "'");
    for (const auto& [cell, side1] : it->second) inst.orient.set(ball.ref(cell), side1);
    for (const auto& [name, role] : spec.named) inst.named[name] = parse_label(role);
    for (const auto& [name, path_cells] : layout.paths) inst.paths[name] = path_cells;
    for (const auto& [name, path_cells] : spec.paths) {
        if (!inst.paths.contains(name)) {
            auto& p = inst.paths[name];
            for (const auto& label : path_cells) p.push_back(parse_label(label));
        }
    }
    return inst;
}

StructureInstance build_structure(const TilingBall& ball, StructureKind kind, const std::string& variant,
                                  std::optional<State> colour) {
    return build_structure(ball, structure_name(kind), variant, colour);
}

StructureInstance instance_for_scenario(const TilingBall& ball, const StructureSpec& spec, const ScenarioSpec& sc,
                                        const std::string& asset_dir_override) {
    std::optional<State> colour;
    if (!spec.colour_cell.empty()) {
        auto it = sc.colour.find(spec.colour_cell);
        colour = it == sc.colour.end() ? State::B : it->second;
    }
    return build_structure(ball, spec.name, sc.variant, colour, asset_dir_override);
}

Configuration inject(const StructureInstance& instance, const ScenarioSpec& scenario) {
    Configuration config = instance.idle;
    for (const auto& run : scenario.runs) {
        for (std::size_t i = 0; i < run.cells.size(); ++i) {
            auto times = run_black_times(run, i);
            if (std::find(times.begin(), times.end(), 0) == times.end()) continue;
            int ref = instance.ball->ref(parse_label(run.cells[i]));
            if (instance.idle.at(ref) == State::B)
                fail(Errc::path_blocked, "injection cell " + run.cells[i] + " is black in the idle configuration");
            config.set(ref, State::B);
        }
    }
    for (const auto& ov : scenario.overrides)
        if (ov.state == State::B && std::find(ov.at.begin(), ov.at.end(), 0) != ov.at.end())
            config.set(instance.ball->ref(parse_label(ov.cell)), State::B);
    return config;
}

bool ExpectationReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

ExpectationReport check_expectations(const StructureInstance& instance, const ScenarioSpec& scenario,
                                     const std::vector<Configuration>& history, const FiringLog&) {
    ExpectationReport report;
    const TilingBall& ball = *instance.ball;
    auto ever_black = [&](int ref) {
        for (const auto& c : history)
            if (c.at(ref) == State::B) return true;
        return false;
    };
    for (const std::string& expect : scenario.expects) {
        std::istringstream in(expect);
        std::string op;
        in >> op;
        ExpectationReport::Item item;
        item.expect = expect;
        if (op == "black-at") {
            std::string label;
            in >> label;
            item.pass = ever_black(ball.ref(parse_label(label)));
            if (!item.pass) item.detail = label + " never became black";
        } else if (op == "never-black") {
            std::string label;
            in >> label;
            item.pass = !ever_black(ball.ref(parse_label(label)));
            if (!item.pass) item.detail = label + " unexpectedly became black";
        } else if (op == "pair-black") {
            std::string a, b;
            in >> a >> b;
            int ra = ball.ref(parse_label(a)), rb = ball.ref(parse_label(b));
            item.pass = false;
            for (const auto& c : history)
                if (c.at(ra) == State::B && c.at(rb) == State::B) item.pass = true;
            if (!item.pass) item.detail = a + " and " + b + " never black together";
        } else if (op == "final") {
            std::string label, state;
            in >> label >> state;
            State want = state == "B" ? State::B : State::W;
            item.pass = history.back().at(ball.ref(parse_label(label))) == want;
            if (!item.pass) item.detail = label + " is not " + state + " at the end";
        } else if (op == "final-support-equals-idle") {
            item.pass = history.back() == instance.idle;
            if (!item.pass) item.detail = "final support differs from the idle configuration";
        } else {
            item.pass = false;
            item.detail = "unknown expectation";
        }
        report.items.push_back(std::move(item));
    }
    return report;
}

} // namespace hypeca
