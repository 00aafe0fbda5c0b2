#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asdlab/io.hpp"

namespace asdlab {

// Mutation probes for the verification suite.
enum class Injection { None, DiagonalSignFlip };
Injection injection_from_name(const std::string& name);
const char* injection_name(Injection i);

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  Injection inject = Injection::None;
  std::vector<int> criteria;  // empty runs 1-10
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  json details;  // measured values and pinned thresholds
};

constexpr int kCriterionCount = 10;
const char* criterion_name(int id);
CriterionResult run_criterion(int id, const VerifyOptions& opts);
std::vector<CriterionResult> run_suite(const VerifyOptions& opts);
json to_json(const CriterionResult& r);

}  // namespace asdlab
