#pragma once

#include <string_view>

namespace iwave {

// Diagnostics go to stderr; IWAVE_QUIET=1 silences warnings.
void log_warning(std::string_view message);
void log_info(std::string_view message);

}  // namespace iwave
