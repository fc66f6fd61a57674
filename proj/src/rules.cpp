#include "hypeca/rules.hpp"

#include <fstream>
#include <sstream>

namespace hypeca {
namespace {

State parse_state(char c, const std::string& line) {
    if (c == 'W') return State::W;
    if (c == 'B') return State::B;
    fail(Errc::malformed_rule, "bad state symbol '" + std::string(1, c) + "' in rule: " + line);
}

} // namespace

std::uint32_t context_key(State current, const Context& ctx) {
    std::uint32_t key = current == State::B ? 1u : 0u;
    for (State s : ctx) key = (key << 1) | (s == State::B ? 1u : 0u);
    return key;
}

void RuleTable::add(Rule rule) {
    if (by_id_.contains(rule.id))
        fail(Errc::duplicate_id, "duplicate rule id " + std::to_string(rule.id));
    int idx = static_cast<int>(rules_.size());
    by_id_.emplace(rule.id, idx);
    by_key_.try_emplace(context_key(rule.current, rule.context), idx);
    rules_.push_back(rule);
}

const Rule* RuleTable::by_id(int id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &rules_[static_cast<std::size_t>(it->second)];
}

const Rule& RuleTable::at_id(int id) const {
    const Rule* r = by_id(id);
    if (!r) fail(Errc::missing_rule, "no rule with id " + std::to_string(id));
    return *r;
}

const Rule* RuleTable::match(State current, const Context& ctx) const {
    auto it = by_key_.find(context_key(current, ctx));
    return it == by_key_.end() ? nullptr : &rules_[static_cast<std::size_t>(it->second)];
}

CoherenceReport RuleTable::check_coherence() const {
    CoherenceReport report;
    std::unordered_map<std::uint32_t, int> seen;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        std::uint32_t key = context_key(rules_[i].current, rules_[i].context);
        auto [it, inserted] = seen.emplace(key, static_cast<int>(i));
        if (inserted) continue;
        const Rule& prev = rules_[static_cast<std::size_t>(it->second)];
        if (prev.next == rules_[i].next)
            report.exact_duplicates.push_back({prev.id, rules_[i].id});
        else
            report.conflicts.push_back({prev.id, rules_[i].id});
    }
    return report;
}

Rule parse_rule_line(const std::string& line) {
    std::istringstream in(line);
    std::string id_tok, cur_tok, ctx_tok, next_tok, extra;
    if (!(in >> id_tok >> cur_tok >> ctx_tok >> next_tok) || (in >> extra))
        fail(Errc::malformed_rule, "expected 'ID CUR CTX8 NEXT': " + line);
    Rule rule;
    try {
        rule.id = std::stoi(id_tok);
    } catch (const std::exception&) {
        fail(Errc::malformed_rule, "bad rule id in: " + line);
    }
    if (cur_tok.size() != 1 || next_tok.size() != 1 || ctx_tok.size() != 8)
        fail(Errc::malformed_rule, "bad field width in rule: " + line);
    rule.current = parse_state(cur_tok[0], line);
    for (int i = 0; i < 8; ++i) rule.context[static_cast<std::size_t>(i)] = parse_state(ctx_tok[static_cast<std::size_t>(i)], line);
    rule.next = parse_state(next_tok[0], line);
    return rule;
}

RuleTable parse_rules(std::istream& in) {
    RuleTable table;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        table.add(parse_rule_line(line.substr(start)));
    }
    return table;
}

RuleTable parse_rules_text(const std::string& text) {
    std::istringstream in(text);
    return parse_rules(in);
}

RuleTable load_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open rule file: " + path);
    return parse_rules(in);
}

std::string serialize_rules(const RuleTable& table) {
    std::string out;
    for (const Rule& r : table.rules()) {
        out += std::to_string(r.id);
        out += ' ';
        out += to_char(r.current);
        out += ' ';
        for (State s : r.context) out += to_char(s);
        out += ' ';
        out += to_char(r.next);
        out += '\n';
    }
    return out;
}

} // namespace hypeca
