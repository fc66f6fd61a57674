#include "hypeca/fitkit.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hypeca/verify.hpp"

namespace hypeca {

std::vector<CellTimeline> reconstruct_timeline(const GoldenTable& table, const RuleTable& rules) {
    validate_golden_table(table, rules);
    std::vector<CellTimeline> out;
    for (std::size_t c = 0; c < table.cells.size(); ++c)
        out.push_back({table.cells[c], reconstruct_column_states(table, static_cast<int>(c), rules)});
    return out;
}

namespace {

// Declared space-time field of one scenario: every cell the injection
// schedule touches has a fully known state sequence; everything else is
// static and reads from the shared sigma.
struct Field {
    const ScenarioSpec* sc = nullptr;
    int steps = 0;
    std::vector<OccRun> runs; // private copy, grown by extensions
    std::unordered_map<int, std::vector<State>> dynamic;
    // sparse facts about cells the traces prove are time-varying (typically
    // the continuation cell a run walks onto after its declared end)
    std::unordered_map<int, std::map<int, State>> pins;
};

struct Constraint {
    int scenario = 0;
    int st = 0;
    const Rule* rule = nullptr;
};

struct Fitter {
    const TilingBall& ball;
    const RuleTable& rules;
    const StructureSpec& spec;
    const GoldenSet& golden;

    std::vector<Field> fields;                                // real scenarios
    std::vector<Field> idles;                                 // synthesized idle checks
    std::unordered_map<int, State> sigma;                     // committed statics
    std::map<std::string, std::unordered_map<int, int>> omega;
    std::map<std::pair<std::string, int>, std::vector<Constraint>> watched; // (variant, ref) -> pins
    std::map<std::pair<int, int>, std::vector<int>> patterns;                 // (scenario, ref) -> ids
    std::set<int> resolved;                                   // cells fitted or proven quiet
    std::vector<std::string> notes;

    Fitter(const TilingBall& b, const RuleTable& r, const StructureSpec& s, const GoldenSet& g)
        : ball(b), rules(r), spec(s), golden(g) {}

    int ref(const std::string& label) const { return ball.ref(parse_label(label)); }
    std::string label(int r) const { return format_label(ball.cell(r)); }

    void build_fields();
    void set_dynamic(Field& f, int ref, const std::vector<int>& black_at);
    void load_golden_bindings();
    std::optional<State> state(const Field& f, int ref, int st) const;
    bool ever_black(const Field& f, int ref) const;
    bool relevant(const Field& f, int ref) const;

    void commit_sigma(int ref, State s);
    void phase1_watched();
    void phase2_unwatched();
    void extend_runs();
    void fit_cell(int ref);
    bool csp_check(int ref, const std::vector<int>& unknowns, unsigned assignment,
                   const std::map<std::string, int>& omegas, int* preferred_hits) const;
    void closed_loop_check() const;
    StructureInstance make_instance(const ScenarioSpec& sc) const;
    FitResult result();
};

void Fitter::set_dynamic(Field& f, int cell_ref, const std::vector<int>& black_at) {
    auto& states = f.dynamic.try_emplace(cell_ref, static_cast<std::size_t>(f.steps) + 1, State::W).first->second;
    for (int t : black_at)
        if (t >= 0 && t <= f.steps) states[static_cast<std::size_t>(t)] = State::B;
}

void Fitter::build_fields() {
    for (const auto& [label_str, s] : spec.pinned) commit_sigma(ref(label_str), s);
    for (const ScenarioSpec& sc : spec.scenarios) {
        Field f;
        f.sc = &sc;
        f.steps = sc.steps;
        f.runs = sc.runs;
        for (const auto& run : f.runs)
            for (std::size_t i = 0; i < run.cells.size(); ++i) {
                int r = ref(run.cells[i]);
                for (int t : run_black_times(run, i)) {
                    if (t > f.steps) continue;
                    auto& states =
                        f.dynamic.try_emplace(r, static_cast<std::size_t>(f.steps) + 1, State::W).first->second;
                    states[static_cast<std::size_t>(t)] = State::B;
                }
                f.dynamic.try_emplace(r, static_cast<std::size_t>(f.steps) + 1, State::W);
            }
        for (const auto& [cell, colour_state] : sc.colour) {
            int r = ref(cell);
            auto& states = f.dynamic.try_emplace(r, static_cast<std::size_t>(f.steps) + 1, colour_state).first->second;
            std::fill(states.begin(), states.end(), colour_state);
        }
        for (const auto& flip : sc.flips) {
            int r = ref(flip.cell);
            auto it = f.dynamic.find(r);
            if (it == f.dynamic.end()) fail(Errc::bad_asset, "flip on cell without colour base: " + flip.cell);
            for (int t = flip.at; t <= f.steps; ++t) it->second[static_cast<std::size_t>(t)] = flip.to;
        }
        for (const auto& ov : sc.overrides) {
            int r = ref(ov.cell);
            auto it = f.dynamic.find(r);
            if (it == f.dynamic.end()) {
                auto sig = sigma.find(r);
                if (sig == sigma.end())
                    fail(Errc::bad_asset, "override on cell with unknown base state: " + ov.cell);
                it = f.dynamic.try_emplace(r, static_cast<std::size_t>(f.steps) + 1, sig->second).first;
            }
            for (int t : ov.at)
                if (t >= 0 && t <= f.steps) it->second[static_cast<std::size_t>(t)] = ov.state;
        }
        fields.push_back(std::move(f));
    }
    // idle fixed-point obligations, one per variant and colour value in use
    std::set<std::pair<std::string, int>> idle_keys;
    for (const ScenarioSpec& sc : spec.scenarios) {
        int colour_key = -1;
        if (!spec.colour_cell.empty()) {
            auto it = sc.colour.find(spec.colour_cell);
            colour_key = (it == sc.colour.end() || it->second == State::B) ? 1 : 0;
        }
        idle_keys.insert({sc.variant, colour_key});
    }
    static std::vector<ScenarioSpec> idle_specs; // stable storage for Field::sc
    idle_specs.clear();
    idle_specs.reserve(idle_keys.size());
    for (const auto& [variant, colour_key] : idle_keys) {
        ScenarioSpec sc;
        sc.name = "idle";
        sc.variant = variant;
        sc.steps = 2;
        if (colour_key >= 0) sc.colour[spec.colour_cell] = colour_key ? State::B : State::W;
        idle_specs.push_back(std::move(sc));
    }
    for (const ScenarioSpec& sc : idle_specs) {
        Field f;
        f.sc = &sc;
        f.steps = sc.steps;
        for (const auto& [cell, colour_state] : sc.colour) {
            int r = ref(cell);
            f.dynamic.try_emplace(r, static_cast<std::size_t>(f.steps) + 1, colour_state);
        }
        idles.push_back(std::move(f));
    }
}

void Fitter::load_golden_bindings() {
    for (const GoldenTable& table : golden.tables) {
        if (table.structure != spec.name) continue;
        validate_golden_table(table, rules);
        int scenario = -1;
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (fields[i].sc->name == table.scenario) scenario = static_cast<int>(i);
        if (scenario < 0) fail(Errc::bad_asset, "golden table " + table.name + " binds unknown scenario " + table.scenario);
        Field& f = fields[static_cast<std::size_t>(scenario)];
        for (std::size_t c = 0; c < table.cells.size(); ++c) {
            int r = ball.ref(table.cells[c]);
            auto states = reconstruct_column_states(table, static_cast<int>(c), rules);
            auto dyn = f.dynamic.find(r);
            if (dyn == f.dynamic.end()) {
                // static watched cell: the column must not change state
                for (State s : states)
                    if (s != states[0])
                        fail(Errc::inconsistent_trace,
                             "cell " + label(r) + " changes state in " + table.name + " but has no declared run");
                commit_sigma(r, states[0]);
            } else {
                for (std::size_t k = 0; k < states.size(); ++k) {
                    int st = table.t0 + static_cast<int>(k) + table.offset;
                    if (st > f.steps) break;
                    if (dyn->second[static_cast<std::size_t>(st)] != states[k])
                        fail(Errc::inconsistent_trace, "declared run disagrees with " + table.name + " at " +
                                                           label(r) + " t=" + std::to_string(table.t0 + (int)k));
                }
            }
            for (std::size_t row = 0; row < table.rows.size(); ++row) {
                int st = table.t0 + static_cast<int>(row) + table.offset;
                if (st >= f.steps) break;
                watched[{f.sc->variant, r}].push_back({scenario, st, &rules.at_id(table.rows[row][c])});
            }
        }
    }
    for (const GoldenPattern& pat : golden.patterns) {
        if (pat.structure != spec.name) continue;
        int scenario = -1;
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (fields[i].sc->name == pat.scenario) scenario = static_cast<int>(i);
        if (scenario < 0) fail(Errc::bad_asset, "pattern " + pat.name + " binds unknown scenario " + pat.scenario);
        for (const auto& [cell, ids] : pat.entries) {
            int r = ball.ref(cell);
            patterns[{scenario, r}] = ids;
            // a static pattern cell's idle state is the first listed rule's current
            const Rule& first = rules.at_id(ids.front());
            if (!fields[static_cast<std::size_t>(scenario)].dynamic.contains(r)) commit_sigma(r, first.current);
        }
    }
}

std::optional<State> Fitter::state(const Field& f, int cell_ref, int st) const {
    auto it = f.dynamic.find(cell_ref);
    if (it != f.dynamic.end()) return it->second[static_cast<std::size_t>(st)];
    if (auto pinned = f.pins.find(cell_ref); pinned != f.pins.end())
        if (auto at = pinned->second.find(st); at != pinned->second.end()) return at->second;
    auto sig = sigma.find(cell_ref);
    if (sig != sigma.end()) return sig->second;
    return std::nullopt;
}

bool Fitter::ever_black(const Field& f, int cell_ref) const {
    auto it = f.dynamic.find(cell_ref);
    if (it != f.dynamic.end())
        return std::any_of(it->second.begin(), it->second.end(), [](State s) { return s == State::B; });
    if (auto pinned = f.pins.find(cell_ref); pinned != f.pins.end())
        for (const auto& [st, s] : pinned->second)
            if (s == State::B) return true;
    auto sig = sigma.find(cell_ref);
    return sig != sigma.end() && sig->second == State::B;
}

bool Fitter::relevant(const Field& f, int cell_ref) const {
    if (ever_black(f, cell_ref)) return true;
    for (int n : ball.neighbors_raw(cell_ref))
        if (n != TilingBall::kNoCell && ever_black(f, n)) return true;
    return false;
}

void Fitter::commit_sigma(int cell_ref, State s) {
    auto [it, inserted] = sigma.emplace(cell_ref, s);
    if (!inserted && it->second != s)
        fail(Errc::static_conflict, "conflicting static state for " + label(cell_ref));
}

void Fitter::phase1_watched() {
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [key, constraints] : watched) {
            const auto& [variant, cell_ref] = key;
            auto& omega_v = omega[variant];
            if (omega_v.contains(cell_ref)) continue;
            using Implied = std::map<int, std::map<std::pair<int, int>, State>>;
            std::vector<int> feasible;
            std::vector<Implied> implications;
            for (int off = 0; off < 8; ++off) {
                Implied implied;
                bool ok = true;
                for (const Constraint& con : constraints) {
                    const Field& f = fields[static_cast<std::size_t>(con.scenario)];
                    auto own = state(f, cell_ref, con.st);
                    if (own && *own != con.rule->current) { ok = false; break; }
                    auto own_next = state(f, cell_ref, con.st + 1);
                    if (own_next && *own_next != con.rule->next) { ok = false; break; }
                    auto nbrs = ball.neighbors_raw(cell_ref);
                    for (int j = 0; j < 8 && ok; ++j) {
                        int n = nbrs[static_cast<std::size_t>((off + j) & 7)];
                        State want = con.rule->context[static_cast<std::size_t>(j)];
                        if (n == TilingBall::kNoCell) {
                            if (want != State::W) ok = false;
                            continue;
                        }
                        auto known = state(f, n, con.st);
                        if (known) {
                            if (*known != want) ok = false;
                        } else {
                            auto [it, inserted] = implied[n].emplace(std::pair{con.scenario, con.st}, want);
                            if (!inserted && it->second != want) ok = false;
                        }
                    }
                    if (!ok) break;
                }
                if (ok) {
                    feasible.push_back(off);
                    implications.push_back(std::move(implied));
                }
            }
            if (feasible.empty())
                fail(Errc::infeasible_orientation, "no side-1 choice satisfies the traces at " + label(cell_ref) +
                                                       " (" + spec.name + ", variant " + variant + ")");
            if (feasible.size() == 1) {
                omega_v[cell_ref] = feasible[0];
                for (const auto& [n, facts] : implications[0]) {
                    bool constant = true;
                    for (const auto& [when, s] : facts) constant = constant && s == facts.begin()->second;
                    if (constant) {
                        commit_sigma(n, facts.begin()->second);
                    } else {
                        // the traces show this neighbor changing state: it is
                        // a continuation cell, not a milestone
                        for (const auto& [when, s] : facts)
                            fields[static_cast<std::size_t>(when.first)].pins[n][when.second] = s;
                        notes.push_back("pinned dynamic neighbor " + label(n) + " (for " + label(cell_ref) + ")");
                    }
                }
                progress = true;
            }
        }
    }
    // leftover multi-candidate watched cells go through the same search the
    // unwatched cells use; their timed pins stay in force via csp_check
}

// Orientation candidates and milestone additions for one cell, all scenarios
// (and idle obligations) at once. Chooses the fewest added milestones, then
// the best preferred-rule coverage, then the smallest offsets.
void Fitter::fit_cell(int cell_ref) {
    if (resolved.contains(cell_ref)) return;

    std::vector<const Field*> all;
    for (const Field& f : fields) all.push_back(&f);
    for (const Field& f : idles) all.push_back(&f);

    std::set<std::string> variants_needed;
    bool any_relevant = false;
    for (const Field* f : all)
        if (relevant(*f, cell_ref)) {
            any_relevant = true;
            variants_needed.insert(f->sc->variant);
        }
    if (!any_relevant) {
        resolved.insert(cell_ref);
        return;
    }
    for (auto it = variants_needed.begin(); it != variants_needed.end();) {
        if (omega[*it].contains(cell_ref)) it = variants_needed.erase(it);
        else ++it;
    }
    if (variants_needed.empty()) {
        resolved.insert(cell_ref);
        return;
    }

    std::vector<int> unknowns;
    for (int n : ball.neighbors_raw(cell_ref)) {
        if (n == TilingBall::kNoCell || sigma.contains(n)) continue;
        bool known_everywhere = true;
        for (const Field* f : all)
            if (relevant(*f, cell_ref) && !f->dynamic.contains(n) && !f->pins.contains(n)) known_everywhere = false;
        if (!known_everywhere) unknowns.push_back(n);
    }
    std::sort(unknowns.begin(), unknowns.end());
    unknowns.erase(std::unique(unknowns.begin(), unknowns.end()), unknowns.end());

    std::vector<std::string> vars(variants_needed.begin(), variants_needed.end());
    struct Candidate {
        unsigned assignment;
        std::map<std::string, int> omegas;
        int preferred;
    };
    std::vector<Candidate> best;
    int best_bits = -1;
    for (int bits = 0; bits <= static_cast<int>(unknowns.size()) && best_bits < 0; ++bits) {
        for (unsigned assignment = 0; assignment < (1u << unknowns.size()); ++assignment) {
            if (std::popcount(assignment) != bits) continue;
            std::map<std::string, int> omegas;
            std::vector<int> idx(vars.size(), 0);
            while (true) {
                for (std::size_t v = 0; v < vars.size(); ++v) omegas[vars[v]] = idx[v];
                int preferred = 0;
                if (csp_check(cell_ref, unknowns, assignment, omegas, &preferred))
                    best.push_back({assignment, omegas, preferred});
                std::size_t v = 0;
                for (; v < vars.size(); ++v) {
                    if (++idx[v] < 8) break;
                    idx[v] = 0;
                }
                if (v == vars.size()) break;
            }
        }
        if (!best.empty()) best_bits = bits;
    }
    if (best.empty())
        fail(Errc::infeasible_orientation,
             "no orientation/milestone assignment works for " + label(cell_ref) + " in " + spec.name);

    std::stable_sort(best.begin(), best.end(), [](const Candidate& a, const Candidate& b) {
        if (a.preferred != b.preferred) return a.preferred > b.preferred;
        if (a.assignment != b.assignment) return a.assignment < b.assignment;
        return a.omegas < b.omegas;
    });
    const Candidate& pick = best.front();
    if (best.size() > 1) {
        for (const std::string& v : vars)
            notes.push_back("ambiguous " + v + " " + label(cell_ref) + " (" + std::to_string(best.size()) +
                            " candidates)");
    }
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        State s = (pick.assignment >> k) & 1u ? State::B : State::W;
        commit_sigma(unknowns[k], s);
        if (s == State::B) notes.push_back("inferred milestone " + label(unknowns[k]) + " (for " + label(cell_ref) + ")");
    }
    for (const auto& [variant, off] : pick.omegas) omega[variant][cell_ref] = off;
    resolved.insert(cell_ref);
}

bool Fitter::csp_check(int cell_ref, const std::vector<int>& unknowns, unsigned assignment,
                       const std::map<std::string, int>& omegas, int* preferred_hits) const {
    auto lookup = [&](const Field& f, int n, int st) -> State {
        if (n == TilingBall::kNoCell) return State::W;
        auto known = state(f, n, st);
        if (known) return *known;
        for (std::size_t k = 0; k < unknowns.size(); ++k)
            if (unknowns[k] == n) return (assignment >> k) & 1u ? State::B : State::W;
        return State::W; // untouched cells read quiescent white
    };
    std::set<int> fired_set;
    std::vector<const Field*> all;
    for (const Field& f : fields) all.push_back(&f);
    for (const Field& f : idles) all.push_back(&f);
    for (std::size_t fi = 0; fi < all.size(); ++fi) {
        const Field& f = *all[fi];
        if (!relevant(f, cell_ref)) continue;
        auto omega_it = omegas.find(f.sc->variant);
        int off;
        if (omega_it != omegas.end()) off = omega_it->second;
        else {
            auto committed = omega.find(f.sc->variant);
            if (committed == omega.end() || !committed->second.contains(cell_ref)) continue;
            off = committed->second.at(cell_ref);
        }
        const std::vector<Constraint>* pins = nullptr;
        if (auto w = watched.find({f.sc->variant, cell_ref}); w != watched.end()) pins = &w->second;
        std::vector<int> fired(static_cast<std::size_t>(f.steps), 1);
        auto nbrs = ball.neighbors_raw(cell_ref);
        for (int st = 0; st < f.steps; ++st) {
            State own = lookup(f, cell_ref, st);
            State own_next = lookup(f, cell_ref, st + 1);
            Context ctx;
            bool quiet = own == State::W;
            for (int j = 0; j < 8; ++j) {
                State s = lookup(f, nbrs[static_cast<std::size_t>((off + j) & 7)], st);
                ctx[static_cast<std::size_t>(j)] = s;
                quiet = quiet && s == State::W;
            }
            if (quiet) {
                if (own_next != State::W) return false;
                continue;
            }
            const Rule* rule = rules.match(own, ctx);
            if (!rule || rule->next != own_next) return false;
            if (pins && fi < fields.size())
                for (const Constraint& con : *pins)
                    if (con.scenario == static_cast<int>(fi) && con.st == st && con.rule->id != rule->id) return false;
            fired[static_cast<std::size_t>(st)] = rule->id;
            fired_set.insert(rule->id);
        }
        if (fi < fields.size()) {
            auto pat = patterns.find({static_cast<int>(fi), cell_ref});
            if (pat != patterns.end() && !pattern_window_match(fired, pat->second, rules)) return false;
        }
    }
    if (preferred_hits) {
        *preferred_hits = 0;
        for (int id : spec.prefer_rules)
            if (fired_set.contains(id)) ++*preferred_hits;
    }
    return true;
}

void Fitter::extend_runs() {
    // pattern-bound cells carry the densest constraints, so their milestone
    // commitments go first
    for (const auto& [key, ids] : patterns) fit_cell(key.second);
    // then the run cells, most-anchored first: each pick is the unfitted cell
    // with the most neighbors already pinned (committed statics or declared
    // dynamics), so path heads inherit the structure's milestones instead of
    // improvising their own
    std::set<int> run_cells;
    for (Field& f : fields)
        for (const auto& run : f.runs)
            for (const std::string& cell : run.cells) run_cells.insert(ref(cell));
    while (true) {
        int best = -1, best_score = -1;
        for (int r : run_cells) {
            if (resolved.contains(r)) continue;
            int score = 0;
            for (int n : ball.neighbors_raw(r)) {
                if (n == TilingBall::kNoCell) continue;
                if (sigma.contains(n)) ++score;
                else {
                    for (const Field& f : fields)
                        if (f.dynamic.contains(n)) {
                            ++score;
                            break;
                        }
                }
            }
            if (score > best_score) {
                best_score = score;
                best = r;
            }
        }
        if (best < 0) break;
        fit_cell(best);
    }
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
        Field& f = fields[fi];
        for (auto& run : f.runs) {
            if (!run.extend) continue;
            while (true) {
                auto last_times = run_black_times(run, run.cells.size() - 1);
                int next_first = run.dbl ? last_times.front() + 1 : last_times.front() + 1;
                if (next_first > f.steps) break;
                int last_ref = ref(run.cells.back());
                const auto& omega_v = omega[f.sc->variant];
                auto it = omega_v.find(last_ref);
                if (it == omega_v.end()) break; // nothing drove the cell; run ends here
                int next_ref = ball.neighbor(last_ref, it->second);
                if (next_ref == TilingBall::kNoCell)
                    fail(Errc::boundary_activity, "run extension walks off the ball at " + label(last_ref));
                run.cells.push_back(label(next_ref));
                set_dynamic(f, next_ref, run_black_times(run, run.cells.size() - 1));
                notes.push_back("extended " + f.sc->name + " with " + label(next_ref));
                fit_cell(next_ref);
            }
        }
    }
}

void Fitter::phase2_unwatched() {
    // everything black anywhere, plus the surrounding ring, ordered and
    // re-scanned until the milestone additions stop
    while (true) {
        std::set<int> agenda;
        std::vector<const Field*> all;
        for (const Field& f : fields) all.push_back(&f);
        for (const Field& f : idles) all.push_back(&f);
        for (const Field* f : all) {
            for (const auto& [r, states] : f->dynamic)
                if (std::any_of(states.begin(), states.end(), [](State s) { return s == State::B; })) agenda.insert(r);
        }
        for (const auto& [r, s] : sigma)
            if (s == State::B) agenda.insert(r);
        std::set<int> ring;
        for (int r : agenda)
            for (int n : ball.neighbors_raw(r))
                if (n != TilingBall::kNoCell) ring.insert(n);
        agenda.insert(ring.begin(), ring.end());
        bool progress = false;
        for (int r : agenda)
            if (!resolved.contains(r)) {
                fit_cell(r);
                progress = true;
            }
        if (!progress) break;
    }
}

StructureInstance Fitter::make_instance(const ScenarioSpec& sc) const {
    StructureInstance inst(ball);
    inst.structure = spec.name;
    inst.variant = sc.variant;
    for (const auto& [r, s] : sigma)
        if (s == State::B) inst.idle.set(r, State::B);
    if (!spec.colour_cell.empty()) {
        auto it = sc.colour.find(spec.colour_cell);
        State want = it == sc.colour.end() ? State::B : it->second;
        inst.idle.set(ball.ref(parse_label(spec.colour_cell)), want);
        inst.colour = want;
    }
    auto omega_it = omega.find(sc.variant);
    if (omega_it != omega.end())
        for (const auto& [r, off] : omega_it->second) inst.orient.set(r, off);
    for (const auto& [name, path_cells] : spec.paths) {
        auto& p = inst.paths[name];
        for (const auto& c : path_cells) p.push_back(parse_label(c));
    }
    return inst;
}

void Fitter::closed_loop_check() const {
    for (const ScenarioSpec& sc : spec.scenarios) {
        StructureInstance inst = make_instance(sc);
        ScenarioOutcome outcome = verify_scenario(ball, rules, spec, sc, inst, golden);
        if (!outcome.pass) {
            std::string what = "closed-loop check failed for " + spec.name + "/" + sc.name;
            if (!outcome.error.empty()) what += ": " + outcome.error;
            for (const TableOutcome& t : outcome.tables)
                if (!t.pass) {
                    what += "; " + t.table;
                    if (t.first_divergence)
                        what += " diverges at " + format_label(t.first_divergence->cell) + " t=" +
                                std::to_string(t.first_divergence->t) + " expected " +
                                std::to_string(t.first_divergence->expected) + " got " +
                                std::to_string(t.first_divergence->got);
                    if (!t.error.empty()) what += " (" + t.error + ")";
                }
            for (const auto& e : outcome.expectations.items)
                if (!e.pass) what += "; expect " + e.expect + " failed";
            fail(Errc::infeasible_orientation, what);
        }
    }
}

FitResult Fitter::result() {
    FitResult out;
    out.layout.structure = spec.name;
    out.layout.colour_cell = spec.colour_cell;
    int colour_ref = spec.colour_cell.empty() ? -1 : ref(spec.colour_cell);
    std::vector<CellId> black;
    for (const auto& [r, s] : sigma)
        if (s == State::B && r != colour_ref) black.push_back(ball.cell(r));
    std::sort(black.begin(), black.end());
    out.layout.black = std::move(black);
    for (const auto& [variant, cells] : omega) {
        std::vector<std::pair<CellId, int>> entries;
        for (const auto& [r, off] : cells) entries.emplace_back(ball.cell(r), off);
        std::sort(entries.begin(), entries.end());
        out.layout.orient[variant] = std::move(entries);
    }
    for (const auto& [name, path_cells] : spec.paths) {
        auto& p = out.layout.paths[name];
        for (const auto& c : path_cells) p.push_back(parse_label(c));
    }
    std::set<CellId> unconstrained;
    for (const Field& f : fields)
        for (const auto& [r, states] : f.dynamic)
            if (!sigma.contains(r) && !resolved.contains(r)) unconstrained.insert(ball.cell(r));
    out.layout.unconstrained.assign(unconstrained.begin(), unconstrained.end());
    std::sort(notes.begin(), notes.end());
    notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
    for (const std::string& n : notes)
        if (n.rfind("ambiguous ", 0) == 0) {
            std::istringstream in(n);
            std::string kw, variant, cell;
            in >> kw >> variant >> cell;
            out.layout.ambiguous.emplace_back(variant, parse_label(cell));
        }
    out.notes = notes;
    return out;
}

} // namespace

FitResult fit_structure(const TilingBall& ball, const RuleTable& rules, const StructureSpec& spec,
                        const GoldenSet& golden) {
    Fitter fit(ball, rules, spec, golden);
    fit.build_fields();
    fit.load_golden_bindings();
    fit.phase1_watched();
    fit.extend_runs();
    fit.phase2_unwatched();
    fit.closed_loop_check();
    return fit.result();
}

std::vector<FitResult> assemble_solved_assets(const TilingBall& ball, const RuleTable& rules, const GoldenSet& golden,
                                              const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<FitResult> results;
    for (const StructureSpec& spec : structure_registry()) {
        FitResult r = fit_structure(ball, rules, spec, golden);
        write_solved_layout(r.layout, out_dir + "/" + spec.name + ".txt", spec);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace hypeca
