#include "asdlab/log.hpp"

#include <cstdlib>
#include <iostream>

namespace asdlab {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* v = std::getenv("ASD_LAB_LOG");
    const std::string s = v ? v : "";
    if (s == "debug") return LogLevel::Debug;
    if (s == "info") return LogLevel::Info;
    return LogLevel::Quiet;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[asdlab] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[asdlab:debug] " << msg << "\n";
}

}  // namespace asdlab
