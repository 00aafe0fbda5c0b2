#include "asdlab/asd_systems.hpp"

#include <algorithm>
#include <cmath>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

constexpr double kCoincide = 1e-12;
constexpr double kFamilyTol = 1e-10;

std::array<cplx, 6> pack6(const DiagonalState& s) {
  return {s.w[0], s.w[1], s.w[2], s.alpha[0], s.alpha[1], s.alpha[2]};
}

std::array<cplx, 9> pack9(const NonDiagonalState& s) {
  return {s.w[0], s.w[1], s.w[2], s.alpha[0], s.alpha[1], s.alpha[2], s.xi[0], s.xi[1], s.xi[2]};
}

bool coincide(cplx a, cplx b) {
  return std::abs(a - b) <= kCoincide * std::max(std::abs(a), std::abs(b));
}

void check_distinct_w(const std::array<cplx, 3>& w) {
  for (int i = 0; i < 3; ++i) {
    const cplx a = w[i], b = w[(i + 1) % 3];
    if (coincide(a, b) || coincide(a * a, b * b))
      throw Error(ErrorCode::DegenerateW, "two w's coincide (w_i^2 = w_j^2)");
  }
}

double max_abs(const std::array<cplx, 3>& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace

StateVector DiagonalState::packed() const {
  const auto a = pack6(*this);
  return StateVector(CVec(a.begin(), a.end()));
}

DiagonalState DiagonalState::unpack(double t, const CVec& y) {
  if (y.size() < 6) throw Error(ErrorCode::InvalidArgument, "diagonal state needs 6 entries");
  return {t, {y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

StateVector NonDiagonalState::packed() const {
  const auto a = pack9(*this);
  return StateVector(CVec(a.begin(), a.end()));
}

NonDiagonalState NonDiagonalState::unpack(double t, const CVec& y) {
  if (y.size() < 9) throw Error(ErrorCode::InvalidArgument, "non-diagonal state needs 9 entries");
  return {t, {y[0], y[1], y[2]}, {y[3], y[4], y[5]}, {y[6], y[7], y[8]}};
}

DiagonalState diagonal_rhs(const DiagonalState& s) {
  const auto d = diagonal_flow(pack6(s));
  return {s.t, {d[0], d[1], d[2]}, {d[3], d[4], d[5]}};
}

NonDiagonalState nondiagonal_rhs(const NonDiagonalState& s, XiEquations form) {
  check_distinct_w(s.w);
  const auto d = nondiagonal_flow(pack9(s), form);
  return {s.t, {d[0], d[1], d[2]}, {d[3], d[4], d[5]}, {d[6], d[7], d[8]}};
}

VectorField diagonal_field() {
  return [](double, const CVec& y, CVec& dy) {
    const auto d = diagonal_flow(std::array<cplx, 6>{y[0], y[1], y[2], y[3], y[4], y[5]});
    std::copy(d.begin(), d.end(), dy.begin());
  };
}

VectorField nondiagonal_field(XiEquations form) {
  return [form](double, const CVec& y, CVec& dy) {
    std::array<cplx, 9> a;
    std::copy(y.begin(), y.begin() + 9, a.begin());
    check_distinct_w({a[0], a[1], a[2]});
    const auto d = nondiagonal_flow(a, form);
    std::copy(d.begin(), d.end(), dy.begin());
  };
}

Trajectory integrate_diagonal(const DiagonalState& s0, double t1, const IntegratorOptions& opts) {
  return integrate(diagonal_field(), s0.packed(), s0.t, t1, opts);
}

Trajectory integrate_nondiagonal(const NonDiagonalState& s0, double t1, XiEquations form,
                                 const IntegratorOptions& opts) {
  check_distinct_w(s0.w);
  return integrate(nondiagonal_field(form), s0.packed(), s0.t, t1, opts);
}

cplx first_integral_k(const DiagonalState& s) {
  const auto& w = s.w;
  const auto& a = s.alpha;
  const cplx num = a[0] * (w[1] * w[1] - w[2] * w[2]) + a[1] * (w[2] * w[2] - w[0] * w[0]) +
                   a[2] * (w[0] * w[0] - w[1] * w[1]);
  const cplx den = 8.0 * (a[0] - a[1]) * (a[1] - a[2]) * (a[2] - a[0]);
  const double scale = 8.0 * std::pow(max_abs(a), 3);
  if (std::abs(den) <= kCoincide * scale)
    throw Error(ErrorCode::DegenerateAlpha, "alpha's are not pairwise distinct");
  return num / den;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Generic: return "Generic";
    case Family::Diagonal: return "Diagonal";
    case Family::AtiyahHitchin: return "AtiyahHitchin";
    case Family::BGPP: return "BGPP";
  }
  return "?";
}

Family detect_family(const DiagonalState& s) {
  const double diff = max_abs({s.alpha[0] - s.w[0], s.alpha[1] - s.w[1], s.alpha[2] - s.w[2]});
  if (diff <= kFamilyTol) return Family::AtiyahHitchin;
  if (max_abs(s.alpha) <= kFamilyTol) return Family::BGPP;
  return Family::Diagonal;
}

Family detect_family(const NonDiagonalState& s) {
  if (max_abs(s.xi) > kFamilyTol) return Family::Generic;
  return detect_family(s.diagonal_part());
}

const char* signature_name(MetricSignature s) {
  switch (s) {
    case MetricSignature::Definite: return "Definite";
    case MetricSignature::NegativeDefinite: return "NegativeDefinite";
    case MetricSignature::Split: return "Split";
    case MetricSignature::Complex: return "Complex";
  }
  return "?";
}

MetricCoefficients metric_coefficients(const DiagonalState& s) {
  const auto& w = s.w;
  if (w[0] == cplx(0) || w[1] == cplx(0) || w[2] == cplx(0))
    throw Error(ErrorCode::InvalidArgument, "metric coefficients need non-zero w's");
  MetricCoefficients m;
  m.a = std::sqrt(w[1] * w[2] / w[0]);
  m.b = w[2] / m.a;
  m.c = w[1] / m.a;
  m.magnitudes = {std::abs(m.a), std::abs(m.b), std::abs(m.c)};

  // Coefficients of dt^2, sigma1^2, sigma2^2, sigma3^2.
  const cplx sq[4] = {w[0] * w[1] * w[2], m.a * m.a, m.b * m.b, m.c * m.c};
  int negative = 0;
  bool real = true;
  for (const cplx& v : sq) {
    if (std::abs(v.imag()) > kCoincide * std::abs(v)) real = false;
    if (v.real() < 0) ++negative;
  }
  if (!real) {
    m.signature = MetricSignature::Complex;
  } else if (negative == 0) {
    m.signature = MetricSignature::Definite;
  } else if (negative == 4) {
    m.signature = MetricSignature::NegativeDefinite;
  } else {
    // The dt^2 coefficient is the product of the other three, so the count is even.
    m.signature = MetricSignature::Split;
  }
  m.riemannian = real && negative == 0;
  return m;
}

PainleveParams pvi_parameters(cplx k, int branch, ParamDictionary dict) {
  if (branch != 1 && branch != -1) throw Error(ErrorCode::InvalidArgument, "branch must be +1 or -1");
  const cplx r = std::sqrt(2.0 * k);
  if (dict == ParamDictionary::Printed) {
    const cplx m = r - 1.0;
    return PainleveParams::make(PainleveKind::VI, {0.5 * m * m, k, -k, 0.5 * (1.0 + 2.0 * k)});
  }
  const cplx m = double(branch) * r - 1.0;
  return PainleveParams::make(PainleveKind::VI, {0.5 * m * m, -k, k, 0.5 * (1.0 - 2.0 * k)});
}

ReductionJets reduction_jets(const DiagonalState& s, cplx k, int branch) {
  const auto y = picard_jets(pack6(s), [](const std::array<Jet, 6>& v) { return diagonal_flow(v); }, 4);
  const Jet &w1 = y[0], &w2 = y[1], &w3 = y[2], &a1 = y[3], &a2 = y[4], &a3 = y[5];
  const cplx root = double(branch) * std::sqrt(2.0 * k);
  ReductionJets r;
  r.x = (a2 - a1) / (a2 - a3);
  const Jet den = w1 * w1 * (w2 * w2 - w3 * w3) * a1 + w2 * w2 * (w3 * w3 - w1 * w1) * a2 +
                  w3 * w3 * (w1 * w1 - w2 * w2) * a3;
  r.q = w2 * (a1 - a2) * (w2 * (w1 * w1 - w3 * w3) + 2.0 * root * w1 * w3 * (a1 - a3)) / den;
  return r;
}

Reduction reduce_to_pvi(const Trajectory& traj, int branch, const std::vector<double>& times,
                        ParamDictionary dict) {
  if (traj.dimension() < 6)
    throw Error(ErrorCode::InvalidArgument, "reduction needs a diagonal-flow trajectory");
  if (branch != 1 && branch != -1) throw Error(ErrorCode::InvalidArgument, "branch must be +1 or -1");
  const DiagonalState s0 = DiagonalState::unpack(traj.t_start(), traj.node_state(0));
  Reduction out;
  out.data.k = first_integral_k(s0);
  out.data.branch = branch;
  out.params = pvi_parameters(out.data.k, branch, dict);
  out.printed_params = pvi_parameters(out.data.k, branch, ParamDictionary::Printed);

  const std::vector<double>& ts = times.empty() ? traj.times() : times;
  for (double t : ts) {
    const DiagonalState s = DiagonalState::unpack(t, traj.eval(t).entries());
    check_distinct_w(s.w);
    if (coincide(s.alpha[1], s.alpha[2]))
      throw Error(ErrorCode::DegenerateAlpha, "alpha2 = alpha3 on the trajectory");
    if (coincide(s.alpha[0], s.alpha[1]) || coincide(s.alpha[0], s.alpha[2])) {
      out.data.dropped_fixed_singularity.push_back(t);
      continue;
    }
    const auto& w = s.w;
    const auto& a = s.alpha;
    const cplx d1 = w[0] * w[0] * (w[1] * w[1] - w[2] * w[2]) * a[0];
    const cplx d2 = w[1] * w[1] * (w[2] * w[2] - w[0] * w[0]) * a[1];
    const cplx d3 = w[2] * w[2] * (w[0] * w[0] - w[1] * w[1]) * a[2];
    if (std::abs(d1 + d2 + d3) <= kCoincide * (std::abs(d1) + std::abs(d2) + std::abs(d3))) {
      out.data.dropped_q_denominator.push_back(t);
      continue;
    }
    const ReductionJets j = reduction_jets(s, out.data.k, branch);
    const cplx x = j.x.value();
    if (std::abs(x) <= kCoincide || std::abs(x - 1.0) <= kCoincide) {
      out.data.dropped_fixed_singularity.push_back(t);
      continue;
    }
    const cplx xd = j.x.derivative_at(1), xdd = j.x.derivative_at(2);
    if (std::abs(xd) <= kCoincide * (1.0 + std::abs(x))) {
      out.data.dropped_stationary_x.push_back(t);
      continue;
    }
    const cplx qd = j.q.derivative_at(1), qdd = j.q.derivative_at(2);
    ReducedSample rs;
    rs.t = t;
    rs.x = x;
    rs.q = j.q.value();
    rs.dq_dx = qd / xd;
    rs.d2q_dx2 = (qdd * xd - qd * xdd) / (xd * xd * xd);
    out.data.samples.push_back(rs);
  }
  return out;
}

std::vector<PainleveSample> finite_difference_samples(const Trajectory& traj, const ReducedData& data,
                                                      double h) {
  const auto at = [&](double t) {
    const DiagonalState s = DiagonalState::unpack(t, traj.eval(t).entries());
    const ReductionJets j = reduction_jets(s, data.k, data.branch);
    return std::pair<cplx, cplx>(j.x.value(), j.q.derivative_at(1) / j.x.derivative_at(1));
  };
  std::vector<PainleveSample> out;
  out.reserve(data.samples.size());
  for (const auto& s : data.samples) {
    if (!traj.covers(s.t - h) || !traj.covers(s.t + h)) continue;
    const auto [xp, qpp] = at(s.t + h);
    const auto [xm, qpm] = at(s.t - h);
    out.push_back({s.x, s.q, s.dq_dx, (qpp - qpm) / (xp - xm)});
  }
  return out;
}

std::vector<PainleveSample> analytic_samples(const ReducedData& data) {
  std::vector<PainleveSample> out;
  out.reserve(data.samples.size());
  for (const auto& s : data.samples) out.push_back({s.x, s.q, s.dq_dx, s.d2q_dx2});
  return out;
}

FrameRotation reconstruct_frame_rotation(const Trajectory& traj, const Eigen::Matrix3d& R0,
                                         const std::vector<double>& times) {
  if (traj.dimension() < 9)
    throw Error(ErrorCode::InvalidArgument, "frame rotation needs a non-diagonal trajectory");
  if ((R0.transpose() * R0 - Eigen::Matrix3d::Identity()).norm() > 1e-8)
    throw Error(ErrorCode::InvalidArgument, "R0 is not orthogonal");
  for (std::size_t i = 0; i < traj.num_nodes(); ++i)
    for (int k = 6; k < 9; ++k) {
      const cplx v = traj.node_state(i)[k];
      if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v)))
        throw Error(ErrorCode::InvalidArgument, "frame rotation needs real xi");
    }

  FrameRotation fr;
  if (times.empty()) return fr;
  std::vector<double> ts = times;
  std::sort(ts.begin(), ts.end());
  for (double t : ts)
    if (!traj.covers(t)) throw Error(ErrorCode::OutOfSpan, "sample time outside the trajectory");

  const VectorField field = [&traj](double t, const CVec& y, CVec& dy) {
    const StateVector s = traj.eval(t);
    Eigen::Matrix3d X;
    const double x1 = s[6].real(), x2 = s[7].real(), x3 = s[8].real();
    X << 0, x3, -x2, -x3, 0, x1, x2, -x1, 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double v = 0;
        for (int m = 0; m < 3; ++m) v += X(r, m) * y[3 * m + c].real();
        dy[3 * r + c] = v;
      }
  };
  CVec y0(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) y0[3 * r + c] = R0(r, c);
  IntegratorOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-14;
  const double t0 = traj.t_start();
  // Samples are expected on one side of t0 (the trajectory's direction).
  const double t1 = ts.back() > t0 ? ts.back() : ts.front();
  const Trajectory rot = (t1 == t0) ? Trajectory() : integrate(field, StateVector(y0), t0, t1, opts);

  for (double t : ts) {
    Eigen::Matrix3d R = R0;
    if (t != t0) {
      if (!rot.covers(t)) throw Error(ErrorCode::OutOfSpan, "sample time on the other side of t0");
      const StateVector y = rot.eval(t);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) R(r, c) = y[3 * r + c].real();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    R = svd.matrixU() * svd.matrixV().transpose();
    fr.max_orthogonality_defect =
        std::max(fr.max_orthogonality_defect, (R.transpose() * R - Eigen::Matrix3d::Identity()).norm());
    fr.times.push_back(t);
    fr.R.push_back(R);
  }
  return fr;
}

}  // namespace asdlab
