#include "hypeca/golden.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hypeca {
namespace {

std::string header_value(const std::string& line) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) return {};
    std::size_t start = line.find_first_not_of(" \t", colon + 1);
    if (start == std::string::npos) return {};
    std::size_t end = line.find_last_not_of(" \t\r");
    return line.substr(start, end - start + 1);
}

bool parse_header(const std::string& line, std::string& table, std::string& structure, std::string& scenario,
                  int& offset) {
    if (line.rfind("# table:", 0) == 0) table = header_value(line);
    else if (line.rfind("# structure:", 0) == 0) structure = header_value(line);
    else if (line.rfind("# scenario:", 0) == 0) scenario = header_value(line);
    else if (line.rfind("# offset:", 0) == 0) offset = std::stoi(header_value(line));
    else return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

GoldenTable load_golden_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open golden table: " + path);
    GoldenTable table;
    std::string line;
    bool have_header_row = false;
    bool have_t0 = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') {
            parse_header(line, table.name, table.structure, table.scenario, table.offset);
            continue;
        }
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (!have_header_row) {
            if (toks[0] != "t") fail(Errc::bad_asset, "golden table must start with a 't' header row: " + path);
            for (std::size_t i = 1; i < toks.size(); ++i) table.cells.push_back(parse_label(toks[i]));
            have_header_row = true;
            continue;
        }
        int t = std::stoi(toks[0]);
        if (!have_t0) {
            table.t0 = t;
            have_t0 = true;
        } else if (t != table.t0 + static_cast<int>(table.rows.size())) {
            fail(Errc::bad_asset, "non-contiguous time rows in " + path);
        }
        if (toks.size() != table.cells.size() + 1)
            fail(Errc::bad_asset, "row width mismatch at t=" + toks[0] + " in " + path);
        std::vector<int> row;
        std::vector<bool> red;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            std::string tok = toks[i];
            bool is_red = !tok.empty() && tok[0] == '*';
            if (is_red) tok.erase(0, 1);
            row.push_back(std::stoi(tok));
            red.push_back(is_red);
        }
        table.rows.push_back(std::move(row));
        table.red.push_back(std::move(red));
    }
    if (table.cells.empty() || table.rows.empty()) fail(Errc::bad_asset, "empty golden table: " + path);
    return table;
}

GoldenPattern load_golden_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open golden pattern: " + path);
    GoldenPattern pat;
    std::string line;
    int ignored_offset = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') {
            parse_header(line, pat.name, pat.structure, pat.scenario, ignored_offset);
            continue;
        }
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) fail(Errc::bad_asset, "bad pattern line in " + path + ": " + line);
        CellId cell = parse_label(line.substr(0, colon));
        std::vector<int> ids;
        std::istringstream rest(line.substr(colon + 1));
        int id = 0;
        while (rest >> id) ids.push_back(id);
        if (ids.empty()) fail(Errc::bad_asset, "empty pattern for " + format_label(cell) + " in " + path);
        pat.entries.emplace_back(cell, std::move(ids));
    }
    if (pat.entries.empty()) fail(Errc::bad_asset, "empty golden pattern: " + path);
    return pat;
}

GoldenSet load_golden_dir(const std::string& dir) {
    GoldenSet set;
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) files.push_back(entry.path());
    if (ec) fail(Errc::io_error, "cannot read golden directory: " + dir);
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        if (path.extension() == ".tsv") set.tables.push_back(load_golden_table(path.string()));
        else if (path.extension() == ".pat") set.patterns.push_back(load_golden_pattern(path.string()));
    }
    if (set.tables.empty()) fail(Errc::missing_golden, "no golden tables found under " + dir);
    return set;
}

void validate_golden_table(const GoldenTable& table, const RuleTable& rules) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.cells.size(); ++c) {
            const Rule& rule = rules.at_id(table.rows[r][c]);
            if (rule.state_changing() != table.red[r][c])
                fail(Errc::inconsistent_trace, "red marker mismatch for rule " + std::to_string(rule.id) + " at " +
                                                   format_label(table.cells[c]) + " t=" +
                                                   std::to_string(table.t0 + static_cast<int>(r)) + " in " + table.name);
            if (r + 1 < table.rows.size()) {
                const Rule& next_rule = rules.at_id(table.rows[r + 1][c]);
                if (next_rule.current != rule.next)
                    fail(Errc::inconsistent_trace,
                         "trace chain broken at " + format_label(table.cells[c]) + " t=" +
                             std::to_string(table.t0 + static_cast<int>(r)) + " in " + table.name + ": rule " +
                             std::to_string(rule.id) + " yields " + std::string(1, to_char(rule.next)) + " but rule " +
                             std::to_string(next_rule.id) + " expects " + std::string(1, to_char(next_rule.current)));
            }
        }
    }
}

std::vector<State> reconstruct_column_states(const GoldenTable& table, int column, const RuleTable& rules) {
    std::vector<State> states;
    states.reserve(table.rows.size() + 1);
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        states.push_back(rules.at_id(table.rows[r][static_cast<std::size_t>(column)]).current);
    states.push_back(rules.at_id(table.rows.back()[static_cast<std::size_t>(column)]).next);
    return states;
}

} // namespace hypeca
