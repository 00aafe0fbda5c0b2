#include "asdlab/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "asdlab/error.hpp"
#include "asdlab/log.hpp"
#include "asdlab/monodromy.hpp"
#include "asdlab/verify.hpp"

namespace asdlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

const std::map<std::string, std::vector<std::string>>& key_table() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"integrate", {"system", "w", "alpha", "xi", "t0", "t1", "xi_equations", "samples", "rel_tol", "abs_tol"}},
      {"reduce", {"w", "alpha", "t0", "t1", "branches", "samples", "h", "rel_tol", "abs_tol"}},
      {"classify", {"connection", "signature", "w", "alpha", "xi", "t0", "t", "xi_equations"}},
      {"monodromy", {"connection", "loops", "total", "signature", "w", "alpha", "xi", "t0", "times",
                     "xi_equations", "substeps", "rel_tol", "abs_tol"}},
      {"verify", {"criteria", "inject", "seed"}},
  };
  return keys;
}

void validate_keys(const std::string& command, const json& config) {
  if (!config.is_object()) bad("config must be a JSON object");
  const auto& allowed = key_table().at(command);
  for (const auto& [k, v] : config.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      bad("unknown key \"" + k + "\" for " + command);
}

double number_or(const json& c, const char* key, double fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number()) bad(std::string(key) + " must be a number");
  return c[key].get<double>();
}

int int_or(const json& c, const char* key, int fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number_integer()) bad(std::string(key) + " must be an integer");
  return c[key].get<int>();
}

std::string string_or(const json& c, const char* key, const std::string& fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_string()) bad(std::string(key) + " must be a string");
  return c[key].get<std::string>();
}

IntegratorOptions integrator_options(const json& c, const CommandOptions& opts, double rel, double abs) {
  IntegratorOptions o;
  o.rel_tol = opts.tol ? *opts.tol : number_or(c, "rel_tol", rel);
  o.abs_tol = number_or(c, "abs_tol", abs);
  if (!(o.rel_tol > 0) || !(o.abs_tol > 0)) bad("tolerances must be positive");
  return o;
}

XiEquations xi_equations(const json& c) {
  const std::string s = string_or(c, "xi_equations", "asd-consistent");
  if (s == "asd-consistent") return XiEquations::AsdConsistent;
  if (s == "printed") return XiEquations::Printed;
  bad("xi_equations must be \"asd-consistent\" or \"printed\"");
}

const char* xi_equations_name(XiEquations f) { return f == XiEquations::Printed ? "printed" : "asd-consistent"; }

// Uniform sample times over [t0, t_end], or the nodes when n is zero.
std::vector<double> sample_times(double t0, double t_end, int n) {
  std::vector<double> ts;
  if (n < 0) bad("samples must be non-negative");
  if (n == 1) bad("samples must be 0 or at least 2");
  for (int i = 0; i < n; ++i) ts.push_back(i + 1 == n ? t_end : t0 + (t_end - t0) * i / (n - 1));
  return ts;
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) bad("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) bad("cannot write " + p.string());
  out << text;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json k_entry(const DiagonalState& s) {
  try {
    return to_json(first_integral_k(s));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateAlpha) throw;
    return nullptr;
  }
}

// integrate -------------------------------------------------------------------

json cmd_integrate(const json& c, const CommandOptions& opts) {
  const std::string system = string_or(c, "system", "diagonal");
  if (system != "diagonal" && system != "nondiagonal") bad("system must be \"diagonal\" or \"nondiagonal\"");
  const InitialData d = initial_data_from_json(c);
  if (d.has_xi && system == "diagonal") bad("xi given for the diagonal system");
  const IntegratorOptions io = integrator_options(c, opts, 1e-12, 1e-14);
  const XiEquations form = xi_equations(c);

  Trajectory tr;
  Family family;
  if (system == "diagonal") {
    family = detect_family(d.diagonal());
    tr = integrate_diagonal(d.diagonal(), d.t1, io);
  } else {
    nondiagonal_rhs(d.nondiagonal(), form);  // DegenerateW before any step
    family = detect_family(d.nondiagonal());
    tr = integrate_nondiagonal(d.nondiagonal(), d.t1, form, io);
  }
  const auto out = prepare_out(opts.out_dir);
  std::ofstream csv(out / "trajectory.csv", std::ios::binary);
  if (!csv) bad("cannot write trajectory.csv");
  write_trajectory_csv(csv, tr, sample_times(tr.t_start(), tr.t_reached(), int_or(c, "samples", 0)));

  const DiagonalState first = DiagonalState::unpack(tr.t_start(), tr.node_state(0));
  const DiagonalState last = DiagonalState::unpack(tr.t_reached(), tr.node_state(tr.num_nodes() - 1));
  json s;
  s["command"] = "integrate";
  s["system"] = system;
  if (system == "nondiagonal") s["xi_equations"] = xi_equations_name(form);
  s["family"] = family_name(family);
  s["termination"] = termination_name(tr.termination());
  s["t0"] = tr.t_start();
  s["t1"] = d.t1;
  s["t_reached"] = tr.t_reached();
  s["k_t0"] = k_entry(first);
  s["k_t1"] = k_entry(last);
  if (s["k_t0"].is_null() || s["k_t1"].is_null()) {
    s["k_drift"] = nullptr;
    s["k_status"] = "undefined: alphas not pairwise distinct";
  } else {
    s["k_drift"] = std::abs(first_integral_k(last) - first_integral_k(first));
    s["k_status"] = system == "diagonal" || family != Family::Generic ? "conserved" : "diagonal part only";
  }
  s["rel_tol"] = io.rel_tol;
  s["abs_tol"] = io.abs_tol;
  s["steps_accepted"] = tr.steps_accepted();
  s["steps_rejected"] = tr.steps_rejected();
  s["nodes"] = tr.num_nodes();
  s["trajectory"] = "trajectory.csv";
  write_text(out / "summary.json", dump(s));
  return s;
}

// reduce ----------------------------------------------------------------------

json cmd_reduce(const json& c, const CommandOptions& opts) {
  const InitialData d = initial_data_from_json(c);
  if (d.has_xi) bad("reduce takes diagonal initial data");
  const IntegratorOptions io = integrator_options(c, opts, 1e-12, 1e-14);
  const double h = number_or(c, "h", 1e-4);
  if (!(h > 0)) bad("h must be positive");
  std::vector<int> branches{1};
  if (c.contains("branches")) {
    if (!c["branches"].is_array() || c["branches"].empty()) bad("branches must be a non-empty list");
    branches.clear();
    for (const auto& b : c["branches"]) {
      if (!b.is_number_integer() || (b.get<int>() != 1 && b.get<int>() != -1)) bad("branches are 1 or -1");
      branches.push_back(b.get<int>());
    }
  }
  const cplx k = first_integral_k(d.diagonal());  // DegenerateAlpha before integrating
  const Trajectory tr = integrate_diagonal(d.diagonal(), d.t1, io);

  // Interior samples, leaving room for the finite-difference stencil.
  const int n = int_or(c, "samples", 20);
  if (n < 1) bad("samples must be positive");
  const double a = tr.t_start(), b = tr.t_reached();
  std::vector<double> ts;
  for (int i = 1; i <= n; ++i) ts.push_back(a + (b - a) * i / (n + 1));

  std::string csv = "branch,t,re(x),im(x),re(q),im(q),re(dq/dx),im(dq/dx)\n";
  json p;
  p["command"] = "reduce";
  p["k"] = to_json(k);
  p["termination"] = termination_name(tr.termination());
  p["t_reached"] = b;
  json list = json::array();
  for (int br : branches) {
    const Reduction red = reduce_to_pvi(tr, br, ts);
    for (const auto& s : red.data.samples) {
      csv += std::to_string(br) + "," + g17(s.t);
      for (cplx v : {s.x, s.q, s.dq_dx}) csv += "," + g17(v.real()) + "," + g17(v.imag());
      csv += "\n";
    }
    json e;
    e["branch"] = br;
    e["params"] = to_json(red.params);
    e["printed_params"] = to_json(red.printed_params);
    if (red.data.samples.empty()) {
      e["residual"] = nullptr;
      e["residual_analytic"] = nullptr;
    } else {
      e["residual"] = residual(red.params, finite_difference_samples(tr, red.data, h));
      e["residual_analytic"] = residual(red.params, analytic_samples(red.data));
      e["printed_residual"] = residual(red.printed_params, finite_difference_samples(tr, red.data, h));
    }
    e["samples"] = red.data.samples.size();
    e["dropped_stationary_x"] = red.data.dropped_stationary_x;
    e["dropped_fixed_singularity"] = red.data.dropped_fixed_singularity;
    e["dropped_q_denominator"] = red.data.dropped_q_denominator;
    list.push_back(e);
  }
  p["branches"] = list;
  p["h"] = h;
  p["reduced"] = "reduced.csv";
  const auto out = prepare_out(opts.out_dir);
  write_text(out / "reduced.csv", csv);
  write_text(out / "params.json", dump(p));
  return p;
}

// classify / monodromy inputs ---------------------------------------------------

Signature signature_of(const json& c) {
  if (!c.contains("signature")) bad("signature required when building from initial data");
  return signature_from_tag(string_or(c, "signature", ""));
}

FlowModel model_of(const InitialData& d, const json& c) {
  FlowModel m;
  m.nondiagonal = d.has_xi;
  m.xi_form = xi_equations(c);
  return m;
}

CVec packed_state(const InitialData& d) {
  return d.has_xi ? d.nondiagonal().packed().entries() : d.diagonal().packed().entries();
}

// Connection at time t built along the flow from the initial data.
RationalConnection built_at(const FlowModel& m, const CVec& y0, double t0, double t, Signature s,
                            const IntegratorOptions& io) {
  CVec y = y0;
  if (t != t0) {
    const Trajectory tr = integrate(m.field(), StateVector(y0), t0, t, io);
    if (!tr.covers(t)) throw Error(ErrorCode::OutOfSpan, "trajectory ends before the requested time");
    y = tr.eval(t).entries();
  }
  return rational_connection(build_connection(twistor_sample(m, t, y).triple), s);
}

json cmd_classify(const json& c, const CommandOptions& opts) {
  RationalConnection rc;
  Signature sig;
  if (c.contains("connection")) {
    rc = connection_from_json(c["connection"]);
    sig = c.contains("signature") ? signature_of(c) : rc.signature;
  } else {
    json init = c;
    init.erase("t");
    if (!init.contains("t1")) init["t1"] = number_or(c, "t0", 0.0) + 1.0;
    const InitialData d = initial_data_from_json(init);
    sig = signature_of(c);
    rc = built_at(model_of(d, c), packed_state(d), d.t0, number_or(c, "t", d.t0), sig,
                  integrator_options(json::object(), opts, 1e-12, 1e-14));
  }
  json j{{"command", "classify"}};
  j.update(to_json(classify(rc, sig)));
  j["connection"] = to_json(rc);
  write_text(prepare_out(opts.out_dir) / "classification.json", dump(j));
  return j;
}

std::vector<int> index_list(const json& j) {
  if (!j.is_array() || j.empty()) bad("a pole loop needs a non-empty index list");
  std::vector<int> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad("pole indices must be integers");
    v.push_back(x.get<int>());
  }
  return v;
}

json matrix_report(const Eigen::Matrix2cd& m) {
  return {{"trace", to_json(m.trace())}, {"determinant", to_json(m.determinant())}, {"matrix", to_json(m)}};
}

json cmd_monodromy(const json& c, const CommandOptions& opts) {
  IntegratorOptions transport = default_transport_options();
  if (opts.tol) transport.rel_tol = *opts.tol;
  json r{{"command", "monodromy"}};

  if (c.contains("connection")) {
    const RationalConnection rc = connection_from_json(c["connection"]);
    json loops = json::array();
    if (c.contains("loops")) {
      if (!c["loops"].is_array()) bad("loops must be a list");
      for (const auto& l : c["loops"]) {
        Contour contour;
        json entry;
        if (l.is_object() && l.contains("circle")) {
          const json& ci = l["circle"];
          if (!ci.is_object() || !ci.contains("center") || !ci.contains("radius")) bad("circle needs center and radius");
          const double radius = number_or(ci, "radius", 0.0);
          if (!(radius > 0)) bad("circle radius must be positive");
          contour = Contour::circle(complex_from_json(ci["center"], "center"), radius);
          entry["circle"] = ci;
        } else if (l.is_object() && l.contains("poles")) {
          const std::vector<int> set = index_list(l["poles"]);
          for (int i : set)
            if (i < 0 || i >= int(rc.poles.size())) bad("pole index out of range");
          contour = circle_around(rc, set).contour;
          entry["poles"] = set;
          entry["circle"] = {{"center", to_json(contour.pieces()[0].center)}, {"radius", contour.pieces()[0].radius}};
        } else {
          bad("each loop is {\"circle\": {center, radius}} or {\"poles\": [indices]}");
        }
        entry.update(matrix_report(monodromy(rc, contour, -1.0, transport)));
        loops.push_back(entry);
      }
    }
    r["loops"] = loops;
    if (c.contains("total") && !c["total"].is_boolean()) bad("total must be a boolean");
    if (!c.contains("total") || c["total"].get<bool>()) {
      const TotalMonodromy tm = total_monodromy(rc);
      json per = json::array();
      for (std::size_t i = 0; i < tm.per_pole.size(); ++i) {
        json e{{"pole", tm.order[i]}};
        e.update(matrix_report(tm.per_pole[i]));
        per.push_back(e);
      }
      r["total"] = {{"lassos", per},
                    {"product", matrix_report(tm.product)},
                    {"all_poles_circle", matrix_report(tm.big_circle)},
                    {"identity_defect", (tm.big_circle - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff()}};
    }
    write_text(prepare_out(opts.out_dir) / "monodromy.json", dump(r));
    return r;
  }

  // Family along the flow: drift of loop traces across sample times.
  json init = c;
  for (const char* k : {"times", "loops", "substeps", "signature", "total"}) init.erase(k);
  if (!c.contains("times") || !c["times"].is_array() || c["times"].empty()) bad("times must be a non-empty list");
  std::vector<double> times;
  for (const auto& t : c["times"]) {
    if (!t.is_number()) bad("times must be numbers");
    times.push_back(t.get<double>());
  }
  if (!std::is_sorted(times.begin(), times.end())) bad("times must be increasing");
  if (!init.contains("t1")) init["t1"] = times.back() == number_or(c, "t0", 0.0) ? times.back() + 1.0 : times.back();
  const InitialData d = initial_data_from_json(init);
  const Signature sig = signature_of(c);
  if (!c.contains("loops") || !c["loops"].is_array() || c["loops"].empty()) bad("loops must be a non-empty list");
  const FlowModel model = model_of(d, c);
  const Trajectory tr = integrate(model.field(), StateVector(packed_state(d)), d.t0, std::max(times.back(), d.t0),
                                  integrator_options(c, opts, 1e-12, 1e-14));
  for (double t : times)
    if (!tr.covers(t)) throw Error(ErrorCode::OutOfSpan, "trajectory does not cover t = " + std::to_string(t));
  const ConnectionFamily fam = [&](double t) {
    return rational_connection(build_connection(twistor_sample(model, t, tr.eval(t).entries()).triple), sig);
  };
  const RationalConnection rc0 = fam(times[0]);
  // A loop is a list of pole indices at the first time, or {"near": points}
  // selecting the pole closest to each point.
  std::vector<std::vector<int>> loops;
  for (const auto& l : c["loops"]) {
    if (l.is_object() && l.contains("near") && l["near"].is_array()) {
      std::vector<int> set;
      for (const auto& pt : l["near"]) {
        const cplx z = complex_from_json(pt, "near");
        int best = 0;
        for (int i = 1; i < int(rc0.poles.size()); ++i)
          if (std::abs(rc0.poles[i].zeta - z) < std::abs(rc0.poles[best].zeta - z)) best = i;
        if (std::find(set.begin(), set.end(), best) == set.end()) set.push_back(best);
      }
      if (set.empty()) bad("near needs at least one point");
      loops.push_back(set);
    } else {
      loops.push_back(index_list(l));
    }
  }
  for (const auto& l : loops)
    for (int i : l)
      if (i < 0 || i >= int(rc0.poles.size())) bad("pole index out of range");
  const DriftReport rep = isomonodromy_drift(fam, times, loops, int_or(c, "substeps", 4));
  json traces = json::array();
  for (std::size_t l = 0; l < loops.size(); ++l) {
    json tl = json::array();
    for (cplx v : rep.traces[l]) tl.push_back(to_json(v));
    traces.push_back({{"poles", loops[l]}, {"traces", tl}});
  }
  r["signature"] = signature_tag(sig);
  r["times"] = times;
  r["poles_at_first_time"] = to_json(rc0)["poles"];
  r["loops"] = traces;
  r["drift"] = rep.drift;
  write_text(prepare_out(opts.out_dir) / "monodromy.json", dump(r));
  return r;
}

// verify ----------------------------------------------------------------------

json cmd_verify(const json& c, const CommandOptions& opts, bool& all_passed) {
  VerifyOptions vo;
  if (c.contains("seed")) {
    if (!c["seed"].is_number_unsigned()) bad("seed must be a non-negative integer");
    vo.seed = c["seed"].get<std::uint64_t>();
  }
  if (opts.seed) vo.seed = *opts.seed;
  vo.inject = injection_from_name(string_or(c, "inject", "none"));
  if (c.contains("criteria")) {
    for (const auto& x : c["criteria"]) {
      if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > kCriterionCount)
        bad("criteria are integers 1-" + std::to_string(kCriterionCount));
      vo.criteria.push_back(x.get<int>());
    }
  }
  json list = json::array();
  all_passed = true;
  for (const CriterionResult& res : run_suite(vo)) {
    all_passed = all_passed && res.passed;
    list.push_back(to_json(res));
  }
  json r{{"command", "verify"},
         {"seed", vo.seed},
         {"inject", injection_name(vo.inject)},
         {"passed", all_passed},
         {"criteria", list}};
  write_text(prepare_out(opts.out_dir) / "verify.json", dump(r));
  return r;
}

}  // namespace

const std::vector<std::string>& config_keys(const std::string& command) {
  const auto it = key_table().find(command);
  if (it == key_table().end()) throw Error(ErrorCode::ConfigError, "unknown command '" + command + "'");
  return it->second;
}

CommandResult run_command(const std::string& name, const CommandOptions& opts) {
  CommandResult res;
  try {
    config_keys(name);
    validate_keys(name, opts.config);
    log_info("running " + name);
    if (name == "integrate") {
      res.report = cmd_integrate(opts.config, opts);
    } else if (name == "reduce") {
      res.report = cmd_reduce(opts.config, opts);
    } else if (name == "classify") {
      res.report = cmd_classify(opts.config, opts);
    } else if (name == "monodromy") {
      res.report = cmd_monodromy(opts.config, opts);
    } else {
      bool ok = true;
      res.report = cmd_verify(opts.config, opts, ok);
      res.exit_code = ok ? 0 : 1;
    }
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.error = e.what();
  } catch (const json::exception& e) {
    res.exit_code = 2;
    res.error = std::string("ConfigError: ") + e.what();
  }
  return res;
}

}  // namespace asdlab
