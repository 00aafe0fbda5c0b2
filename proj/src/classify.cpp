#include "asdlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

bool lex_less(cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); }

cplx involution(Signature s, cplx z) { return s == Signature::Split ? std::conj(z) : -1.0 / std::conj(z); }

// Merges listed poles closer than the merge tolerance, summing orders and
// coefficients power by power.
std::vector<Pole> collapse(const std::vector<Pole>& in, double tol) {
  std::vector<Pole> out;
  for (const Pole& p : in) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Pole& q) { return std::abs(q.zeta - p.zeta) <= tol; });
    if (it == out.end()) {
      out.push_back(p);
      continue;
    }
    const int total = it->order + p.order;
    it->zeta = (double(it->order) * it->zeta + double(p.order) * p.zeta) / double(total);
    it->order = total;
    it->coeffs.resize(std::max(it->coeffs.size(), p.coeffs.size()), Eigen::Matrix2cd::Zero());
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) it->coeffs[k] += p.coeffs[k];
  }
  return out;
}

Eigen::Matrix2cd coeff(const Pole& p, std::size_t k) {
  return k < p.coeffs.size() ? p.coeffs[k] : Eigen::Matrix2cd::Zero();
}

Exponent make_theta(const std::string& name, cplx squared) { return {name, squared, principal_theta(squared)}; }

[[noreturn]] void unclassifiable(const std::string& what) {
  throw Error(ErrorCode::UnclassifiableConfiguration, what);
}

}  // namespace

const char* case_tag(PoleCase c) {
  switch (c) {
    case PoleCase::A: return "a";
    case PoleCase::B: return "b";
    case PoleCase::C: return "c";
    case PoleCase::D: return "d";
    case PoleCase::E: return "e";
  }
  return "?";
}

PoleCase case_from_tag(const std::string& tag) {
  for (PoleCase c : {PoleCase::A, PoleCase::B, PoleCase::C, PoleCase::D, PoleCase::E})
    if (tag == case_tag(c)) return c;
  throw Error(ErrorCode::ConfigError, "unknown case tag '" + tag + "'");
}

bool case_allowed(Signature s, PoleCase c) {
  return s == Signature::Split || c == PoleCase::A || c == PoleCase::B;
}

const Exponent& PoleConfig::exponent(const std::string& name) const {
  for (const auto& e : exponents)
    if (e.name == name) return e;
  throw Error(ErrorCode::InvalidArgument, "no exponent named " + name);
}

cplx theta_squared_residue(const Eigen::Matrix2cd& A) { return 2.0 * (A * A).trace(); }

cplx theta_squared_pair(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& C) {
  const cplx c2 = (C * C).trace();
  if (!(std::abs(c2) > 1e-12 * C.squaredNorm()))
    throw Error(ErrorCode::DegenerateTrace, "tr C^2 vanishes");
  const cplx ac = (A * C).trace();
  return 2.0 * ac * ac / c2;
}

// Signed zeros would put a negative real squared value on either side of the cut.
cplx principal_theta(cplx squared) {
  return std::sqrt(cplx(squared.real(), squared.imag() == 0.0 ? 0.0 : squared.imag()));
}

PoleConfig classify_poles(const RationalConnection& b1, Signature signature) {
  if (b1.infinity_order > 0) unclassifiable("B1 has a pole at infinity (deg G < 4)");
  std::vector<cplx> zs;
  for (const auto& p : b1.poles) {
    zs.push_back(p.zeta);
    if (signature == Signature::Definite && std::abs(p.zeta) > 0) zs.push_back(involution(signature, p.zeta));
  }
  const double tol = merge_threshold(zs);

  PoleConfig cfg;
  cfg.signature = signature;
  cfg.margins.merge_tolerance = tol;
  cfg.margins.max_cluster_spread = b1.max_cluster_spread;
  const std::vector<Pole> poles = collapse(b1.poles, tol);

  double sep = poles.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j) sep = std::min(sep, std::abs(poles[i].zeta - poles[j].zeta));
  cfg.margins.min_cluster_separation = sep;

  // Reality: every pole's image is a pole of the same order.
  for (const auto& p : poles) {
    if (signature == Signature::Definite && std::abs(p.zeta) <= tol)
      throw Error(ErrorCode::RealityViolation, "pole at 0 has its antipode at infinity");
    const cplx img = involution(signature, p.zeta);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : poles)
      if (q.order == p.order) best = std::min(best, std::abs(q.zeta - img));
    cfg.margins.reality_defect = std::max(cfg.margins.reality_defect, best);
    if (!(best <= tol))
      throw Error(ErrorCode::RealityViolation,
                  std::string("pole set not closed under ") +
                      (signature == Signature::Split ? "conjugation" : "the antipodal map"));
  }

  int total = 0;
  for (const auto& p : poles) total += p.order;
  if (total != 4) unclassifiable("pole orders total " + std::to_string(total) + ", not 4");

  std::vector<int> real, complex_upper, complex_all;
  double min_im = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const cplx z = poles[i].zeta;
    if (is_real_pole(z)) {
      real.push_back(int(i));
      cfg.margins.max_real_imag = std::max(cfg.margins.max_real_imag, std::abs(z.imag()));
    } else {
      complex_all.push_back(int(i));
      min_im = std::min(min_im, std::abs(z.imag()));
      if (z.imag() > 0) complex_upper.push_back(int(i));
    }
  }
  cfg.margins.min_complex_imag = complex_all.empty() ? 0.0 : min_im;
  const auto by_lex = [&](int a, int b) { return lex_less(poles[a].zeta, poles[b].zeta); };
  std::sort(real.begin(), real.end(), by_lex);
  std::sort(complex_upper.begin(), complex_upper.end(), by_lex);

  std::vector<int> orders;
  for (const auto& p : poles) orders.push_back(p.order);
  std::sort(orders.rbegin(), orders.rend());
  const auto order_is = [&](std::vector<int> o) { return orders == o; };
  const auto order_of = [&](int i) { return poles[i].order; };

  if (signature == Signature::Split) {
    if (order_is({1, 1, 1, 1}) && real.empty()) {
      cfg.pole_case = PoleCase::A;
      cfg.labelled = complex_upper;
    } else if (order_is({2, 1, 1}) && real.size() == 1 && order_of(real[0]) == 2) {
      cfg.pole_case = PoleCase::B;
      cfg.labelled = {real[0], complex_upper.at(0)};
    } else if (order_is({2, 2}) && real.empty()) {
      cfg.pole_case = PoleCase::C;
      cfg.labelled = {complex_upper.at(0)};
    } else if (order_is({2, 2}) && real.size() == 2) {
      cfg.pole_case = PoleCase::D;
      cfg.labelled = real;
    } else if (order_is({4}) && real.size() == 1) {
      cfg.pole_case = PoleCase::E;
      cfg.labelled = real;
    } else {
      unclassifiable("split pole configuration outside cases (a)-(e)");
    }
  } else {
    std::vector<int> all(poles.size());
    std::iota(all.begin(), all.end(), 0);
    std::sort(all.begin(), all.end(), by_lex);
    if (order_is({1, 1, 1, 1})) {
      cfg.pole_case = PoleCase::A;
      const int z0 = all[0];
      const cplx anti = involution(signature, poles[z0].zeta);
      int z1 = -1;
      for (int i : all) {
        if (i == z0 || std::abs(poles[i].zeta - anti) <= tol) continue;
        z1 = i;
        break;
      }
      cfg.labelled = {z0, z1};
    } else if (order_is({2, 2})) {
      cfg.pole_case = PoleCase::B;
      cfg.labelled = {all[0]};
    } else {
      unclassifiable("definite pole configuration outside cases (a)-(b)");
    }
  }

  if (cfg.pole_case == PoleCase::E) {
    const Eigen::Matrix2cd c1 = coeff(poles[cfg.labelled[0]], 3);
    cfg.degenerate_leading = std::abs(c1.determinant()) <= 1e-12 * c1.squaredNorm();
  }

  RationalConnection collapsed = b1;
  collapsed.poles = poles;
  cfg.exponents = local_exponents(collapsed, cfg);
  return cfg;
}

std::vector<Exponent> local_exponents(const RationalConnection& b1, const PoleConfig& cfg) {
  const auto pole = [&](std::size_t k) -> const Pole& { return b1.poles.at(cfg.labelled.at(k)); };
  const cplx mi(0.0, -1.0);
  std::vector<Exponent> out;
  if (cfg.signature == Signature::Split) {
    switch (cfg.pole_case) {
      case PoleCase::A:
        out.push_back(make_theta("theta0", theta_squared_residue(coeff(pole(0), 0))));
        out.push_back(make_theta("theta1", theta_squared_residue(coeff(pole(1), 0))));
        break;
      case PoleCase::B: {
        const Eigen::Matrix2cd A2 = coeff(pole(1), 0), C = coeff(pole(0), 1);
        out.push_back(make_theta("theta0", theta_squared_residue(A2)));
        out.push_back(make_theta("theta_inf", theta_squared_pair(A2 - A2.adjoint(), C)));
        break;
      }
      case PoleCase::C:
        out.push_back(make_theta("theta", theta_squared_pair(coeff(pole(0), 1), mi * coeff(pole(0), 0))));
        break;
      case PoleCase::D: {
        const Eigen::Matrix2cd C1 = coeff(pole(0), 1), C2 = coeff(pole(0), 0), C3 = coeff(pole(1), 1);
        out.push_back(make_theta("theta1", theta_squared_pair(C1, C2)));
        out.push_back(make_theta("theta2", theta_squared_pair(C3, C2)));
        break;
      }
      case PoleCase::E: {
        const cplx a = 0.5 * (1.0 + (coeff(pole(0), 2) * coeff(pole(0), 1)).trace());
        out.push_back({"alpha", a, a});
        break;
      }
    }
  } else {
    switch (cfg.pole_case) {
      case PoleCase::A:
        out.push_back(make_theta("theta0", theta_squared_residue(coeff(pole(0), 0))));
        out.push_back(make_theta("theta1", theta_squared_residue(coeff(pole(1), 0))));
        break;
      case PoleCase::B:
        out.push_back(make_theta("theta", theta_squared_pair(coeff(pole(0), 1), mi * coeff(pole(0), 0))));
        break;
      default:
        throw Error(ErrorCode::InvalidArgument, "definite configurations have cases a and b only");
    }
  }
  return out;
}

PainleveParams painleve_parameters(const PoleConfig& cfg) {
  const auto th = [&](const char* n) { return cfg.exponent(n).value; };
  const auto vi = [&]() {
    const cplx t0 = th("theta0"), t1 = th("theta1");
    return PainleveParams::make(PainleveKind::VI, {0.5 * (t0 - 1.0) * (t0 - 1.0), 0.5 * std::conj(t0) * std::conj(t0),
                                                   -0.5 * t1 * t1, 0.5 * (1.0 + std::conj(t1) * std::conj(t1))});
  };
  const auto iii = [&]() {
    const cplx t = th("theta");
    return PainleveParams::make(PainleveKind::III, {4.0 * t, 4.0 * (1.0 + std::conj(t)), 4.0, -4.0});
  };
  if (cfg.signature == Signature::Definite) return cfg.pole_case == PoleCase::A ? vi() : iii();
  switch (cfg.pole_case) {
    case PoleCase::A: return vi();
    case PoleCase::B: {
      const cplx t0 = th("theta0"), tb = std::conj(t0), ti = th("theta_inf");
      return PainleveParams::make(PainleveKind::V, {0.5 * (t0 + tb + ti) * (t0 + tb + ti),
                                                    -0.5 * (t0 + tb - ti) * (t0 + tb - ti), 1.0 - t0 + tb, 0.5});
    }
    case PoleCase::C: return iii();
    case PoleCase::D:
      return PainleveParams::make(PainleveKind::III,
                                  {4.0 * th("theta1"), 4.0 * (1.0 + th("theta2")), 4.0, -4.0});
    case PoleCase::E:
      if (cfg.degenerate_leading) return PainleveParams::make(PainleveKind::I, {});
      return PainleveParams::make(PainleveKind::II, {th("alpha")});
  }
  return {};
}

const char* interpretation_name(Interpretation i) {
  switch (i) {
    case Interpretation::Generic: return "Generic";
    case Interpretation::HermitianStructure: return "HermitianStructure";
    case Interpretation::OneNullSurfaceFamily: return "OneNullSurfaceFamily";
    case Interpretation::TwoNullSurfaceFamilies: return "TwoNullSurfaceFamilies";
  }
  return "?";
}

Interpretation geometric_interpretation(Signature s, PoleCase c) {
  if (!case_allowed(s, c)) throw Error(ErrorCode::InvalidArgument, "case not available for this signature");
  if (s == Signature::Definite) return c == PoleCase::B ? Interpretation::HermitianStructure : Interpretation::Generic;
  switch (c) {
    case PoleCase::A: return Interpretation::Generic;
    case PoleCase::B:
    case PoleCase::E: return Interpretation::OneNullSurfaceFamily;
    case PoleCase::C: return Interpretation::HermitianStructure;
    case PoleCase::D: return Interpretation::TwoNullSurfaceFamilies;
  }
  return Interpretation::Generic;
}

Classification classify(const RationalConnection& b1, Signature signature) {
  Classification c;
  c.config = classify_poles(b1, signature);
  c.params = painleve_parameters(c.config);
  c.interpretation = geometric_interpretation(c.config);
  return c;
}

}  // namespace asdlab
