#pragma once

#include "json.hpp"
#include <string>

#include "asdlab/asd_systems.hpp"
#include "asdlab/classify.hpp"

namespace asdlab {

using json = nlohmann::ordered_json;

// Complex numbers are [re, im]; plain numbers are accepted on input.
json to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& what);
json to_json(const Eigen::Matrix2cd& m);
Eigen::Matrix2cd matrix_from_json(const json& j, const std::string& what);

json to_json(const PainleveParams& p);
PainleveParams params_from_json(const json& j);

json to_json(const RationalConnection& rc);
RationalConnection connection_from_json(const json& j);

json to_json(const Classification& c);

// {"w": [..3], "alpha": [..3], "xi": [..3 optional], "t0": ..., "t1": ...}.
struct InitialData {
  std::array<cplx, 3> w{}, alpha{}, xi{};
  bool has_xi = false;
  double t0 = 0, t1 = 1;

  DiagonalState diagonal() const { return {t0, w, alpha}; }
  NonDiagonalState nondiagonal() const { return {t0, w, alpha, xi}; }
};
InitialData initial_data_from_json(const json& j);

// Reads a JSON file; ConfigError on I/O or parse failure.
json read_json_file(const std::string& path);
// Two-space indented, trailing newline.
std::string dump(const json& j);

}  // namespace asdlab
