#pragma once

#include <stdexcept>
#include <string>

namespace hypeca {

enum class Errc {
    malformed_label,
    boundary_cell,
    malformed_rule,
    duplicate_id,
    missing_rule,
    missing_orientation,
    boundary_activity,
    path_blocked,
    unresolved_layout,
    inconsistent_trace,
    static_conflict,
    infeasible_orientation,
    missing_golden,
    bad_asset,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace hypeca
