#pragma once

#include <string_view>

namespace catsim {

/// Truncation and convergence warnings go to stderr unless silenced.
void warn(std::string_view message);
void set_warnings_enabled(bool enabled);
bool warnings_enabled();

}  // namespace catsim
