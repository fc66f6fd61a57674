#pragma once

#include <string>

namespace hypeca {

// Root of the data assets (rules, golden tables, solved layouts).
// HYPECA_ASSETS overrides the compiled-in source location.
std::string asset_dir();
std::string asset_path(const std::string& relative);

} // namespace hypeca
