#include "asdlab/io.hpp"

#include <fstream>
#include <sstream>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

double number(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

std::array<cplx, 3> triple(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) bad(what + " must be a list of 3 values");
  return {complex_from_json(j[0], what), complex_from_json(j[1], what), complex_from_json(j[2], what)};
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad(what + " must be a number or [re, im]");
}

json to_json(const Eigen::Matrix2cd& m) {
  return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                      json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

Eigen::Matrix2cd matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    bad(what + " must be a 2x2 matrix of complex entries");
  Eigen::Matrix2cd m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = complex_from_json(j[a][b], what);
  return m;
}

json to_json(const PainleveParams& p) {
  json j;
  j["kind"] = kind_name(p.kind);
  const char* names[] = {"alpha", "beta", "gamma", "delta"};
  for (int i = 0; i < parameter_arity(p.kind); ++i) j[names[i]] = to_json(p.slot(i));
  return j;
}

PainleveParams params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("params need a string \"kind\"");
  PainleveParams p;
  try {
    p.kind = kind_from_name(j["kind"].get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
  const char* names[] = {"alpha", "beta", "gamma", "delta"};
  std::vector<cplx> v;
  for (int i = 0; i < parameter_arity(p.kind); ++i) {
    if (!j.contains(names[i])) bad(std::string("params missing \"") + names[i] + "\"");
    v.push_back(complex_from_json(j[names[i]], names[i]));
  }
  return PainleveParams::make(p.kind, v);
}

json to_json(const RationalConnection& rc) {
  json j;
  j["signature"] = signature_tag(rc.signature);
  json poles = json::array();
  for (const auto& p : rc.poles) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(to_json(c));
    poles.push_back({{"zeta", to_json(p.zeta)}, {"order", p.order}, {"coeffs", coeffs}});
  }
  j["poles"] = poles;
  if (rc.infinity_order) j["infinity_order"] = rc.infinity_order;
  return j;
}

RationalConnection connection_from_json(const json& j) {
  if (!j.is_object() || !j.contains("poles") || !j["poles"].is_array()) bad("connection needs a \"poles\" list");
  RationalConnection rc;
  if (j.contains("signature")) {
    if (!j["signature"].is_string()) bad("signature must be a string");
    rc.signature = signature_from_tag(j["signature"].get<std::string>());
  }
  for (const auto& pj : j["poles"]) {
    if (!pj.is_object() || !pj.contains("zeta") || !pj.contains("order") || !pj.contains("coeffs"))
      bad("each pole needs zeta, order and coeffs");
    Pole p;
    p.zeta = complex_from_json(pj["zeta"], "zeta");
    if (!pj["order"].is_number_integer()) bad("order must be an integer");
    p.order = pj["order"].get<int>();
    if (p.order < 1 || p.order > 4) bad("order must be in 1..4");
    if (!pj["coeffs"].is_array() || pj["coeffs"].size() != std::size_t(p.order))
      bad("a pole of order n needs n coefficient matrices");
    for (const auto& c : pj["coeffs"]) p.coeffs.push_back(matrix_from_json(c, "coeffs"));
    rc.poles.push_back(p);
  }
  if (j.contains("infinity_order")) {
    if (!j["infinity_order"].is_number_integer()) bad("infinity_order must be an integer");
    rc.infinity_order = j["infinity_order"].get<int>();
  }
  return rc;
}

json to_json(const Classification& c) {
  const PoleConfig& cfg = c.config;
  json j;
  j["signature"] = signature_tag(cfg.signature);
  j["case"] = case_tag(cfg.pole_case);
  j["kind"] = kind_name(c.params.kind);
  json ex = json::object();
  for (const auto& e : cfg.exponents) {
    if (e.name == "alpha")
      ex[e.name] = to_json(e.value);
    else
      ex[e.name] = {{"squared", to_json(e.squared)}, {"value", to_json(e.value)}};
  }
  j["exponents"] = ex;
  j["branch"] = "principal";
  j["params"] = to_json(c.params);
  j["interpretation"] = interpretation_name(c.interpretation);
  json lab = json::array();
  for (int i : cfg.labelled) lab.push_back(i);
  j["labelled_poles"] = lab;
  const auto& m = cfg.margins;
  j["margins"] = {{"merge_tolerance", m.merge_tolerance},   {"max_cluster_spread", m.max_cluster_spread},
                  {"min_cluster_separation", m.min_cluster_separation}, {"real_tolerance", kRealTol},
                  {"max_real_imag", m.max_real_imag},       {"min_complex_imag", m.min_complex_imag},
                  {"reality_defect", m.reality_defect}};
  return j;
}

InitialData initial_data_from_json(const json& j) {
  if (!j.is_object()) bad("initial data must be an object");
  for (const char* k : {"w", "alpha"})
    if (!j.contains(k)) bad(std::string("initial data missing \"") + k + "\"");
  InitialData d;
  d.w = triple(j["w"], "w");
  d.alpha = triple(j["alpha"], "alpha");
  if (j.contains("xi")) {
    d.xi = triple(j["xi"], "xi");
    d.has_xi = true;
  }
  if (j.contains("t0")) d.t0 = number(j["t0"], "t0");
  if (j.contains("t1")) d.t1 = number(j["t1"], "t1");
  if (d.t0 == d.t1) bad("t0 and t1 must differ");
  return d;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace asdlab
