#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypeca/errors.hpp"

namespace hypeca {

enum class State : std::uint8_t { W = 0, B = 1 };

inline char to_char(State s) { return s == State::W ? 'W' : 'B'; }

using Context = std::array<State, 8>; // neighbor 1..8 in oriented order

// One table entry "X0 X1..X8 Xn": current state, eight oriented neighbor
// states, new state. Matching is positional; no rotation closure exists
// anywhere in this codebase.
struct Rule {
    int id = 0;
    State current = State::W;
    Context context{};
    State next = State::W;

    bool state_changing() const { return next != current; }
};

std::uint32_t context_key(State current, const Context& ctx);

struct CoherencePair {
    int first_id = 0;
    int second_id = 0;
};

struct CoherenceReport {
    std::vector<CoherencePair> conflicts;        // same (current, context), different next
    std::vector<CoherencePair> exact_duplicates; // fully identical rules (warning only)
};

class RuleTable {
public:
    void add(Rule rule); // DuplicateId on repeated id
    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    const Rule* by_id(int id) const;
    const Rule& at_id(int id) const; // missing_rule if absent
    // Unique match for (current, context); first matching rule wins on
    // conflicting tables, mirroring file order.
    const Rule* match(State current, const Context& ctx) const;

    CoherenceReport check_coherence() const;

private:
    std::vector<Rule> rules_;
    std::unordered_map<std::uint32_t, int> by_key_; // first rule with that key
    std::unordered_map<int, int> by_id_;
};

// Line format: "ID CUR CTX8 NEXT", single spaces, '#' comments.
RuleTable parse_rules(std::istream& in);
RuleTable parse_rules_text(const std::string& text);
RuleTable load_rules_file(const std::string& path);
std::string serialize_rules(const RuleTable& table);

Rule parse_rule_line(const std::string& line); // malformed_rule on bad shape

} // namespace hypeca
