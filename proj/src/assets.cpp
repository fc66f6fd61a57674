#include "hypeca/assets.hpp"

#include <cstdlib>

#ifndef HYPECA_SOURCE_ASSET_DIR
#define HYPECA_SOURCE_ASSET_DIR "assets"
#endif

namespace hypeca {

std::string asset_dir() {
    if (const char* env = std::getenv("HYPECA_ASSETS"); env && *env) return env;
    return HYPECA_SOURCE_ASSET_DIR;
}

std::string asset_path(const std::string& relative) { return asset_dir() + "/" + relative; }

} // namespace hypeca
