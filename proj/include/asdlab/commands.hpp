#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "asdlab/io.hpp"

namespace asdlab {

struct CommandOptions {
  json config = json::object();
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;  // replaces the command's default relative tolerance
};

struct CommandResult {
  int exit_code = 0;
  json report;            // the main JSON artifact, also written to out_dir
  std::string error;      // set when exit_code is 2-5
};

// Runs integrate, reduce, classify, monodromy or verify. Errors of this
// library become exit codes; nothing anticipated escapes as an exception.
CommandResult run_command(const std::string& name, const CommandOptions& opts);

// Keys accepted by each command's config, for validation and documentation.
const std::vector<std::string>& config_keys(const std::string& command);

}  // namespace asdlab
