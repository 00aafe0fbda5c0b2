#pragma once

#include <string>

namespace asdlab {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

// Read once from ASD_LAB_LOG (quiet, info, debug; default quiet).
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace asdlab
