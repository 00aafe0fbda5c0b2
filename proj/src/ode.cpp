#include "asdlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "asdlab/error.hpp"
#include "dop853_tableau.hpp"

namespace asdlab {

namespace {

bool all_finite(const CVec& v) {
  for (const auto& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double max_abs(const CVec& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// y1 = y + h * sum_j coef_j * k_j
template <std::size_t N>
void combine(CVec& y1, const CVec& y, double h, const std::array<double, N>& coef,
             const std::array<const CVec*, N>& ks) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0;
    for (std::size_t j = 0; j < N; ++j) s += coef[j] * (*ks[j])[i];
    y1[i] = y[i] + h * s;
  }
}

}  // namespace

StateVector::StateVector(CVec entries) : entries_(std::move(entries)) {
  if (!all_finite(entries_)) throw Error(ErrorCode::InvalidArgument, "state has non-finite entries");
}

double StateVector::norm_inf() const { return max_abs(entries_); }

void IntegratorOptions::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  if (!(max_step > 0)) throw Error(ErrorCode::InvalidArgument, "max_step must be positive");
  if (!(blow_up_threshold > 0))
    throw Error(ErrorCode::InvalidArgument, "blow_up_threshold must be positive");
  if (max_steps <= 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::BlowUp: return "blow_up";
    case Termination::StepFailure: return "step_failure";
  }
  return "unknown";
}

bool Trajectory::covers(double t) const {
  const double lo = std::min(t_start_, t_reached_), hi = std::max(t_start_, t_reached_);
  return t >= lo && t <= hi;
}

void Trajectory::interpolate(std::size_t i, double t, CVec& out) const {
  const auto& r = dense_[i];
  const double s = (t - times_[i]) / step_h_[i];
  const double s1 = 1.0 - s;
  out.resize(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const cplx conpar = r[4][j] + s * (r[5][j] + s1 * (r[6][j] + s * r[7][j]));
    out[j] = r[0][j] + s * (r[1][j] + s1 * (r[2][j] + s * (r[3][j] + s1 * conpar)));
  }
}

StateVector Trajectory::eval(double t) const {
  if (!covers(t)) throw Error(ErrorCode::OutOfSpan, "t outside the covered interval");
  if (times_.size() == 1) return StateVector(states_[0]);
  const bool fwd = t_reached_ >= t_start_;
  // Index of the step containing t.
  std::size_t i;
  if (fwd) {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - times_.begin()) - 1));
  } else {
    auto it = std::upper_bound(times_.begin(), times_.end(), t, std::greater<double>());
    i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - times_.begin()) - 1));
  }
  if (i >= dense_.size()) i = dense_.size() - 1;
  if (t == times_[i]) return StateVector(states_[i]);
  if (t == times_[i + 1]) return StateVector(states_[i + 1]);
  CVec out;
  interpolate(i, t, out);
  return StateVector(std::move(out));
}

StateVector dense_eval(const Trajectory& traj, double t) { return traj.eval(t); }

Trajectory integrate(const VectorField& field, const StateVector& y0, double t0, double t1,
                     const IntegratorOptions& opts) {
  using namespace dop853;
  opts.validate();
  if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw Error(ErrorCode::InvalidArgument, "degenerate integration span");

  const std::size_t n = y0.dimension();
  Trajectory tr;
  tr.t_start_ = t0;
  tr.t_end_ = t1;
  tr.t_reached_ = t0;
  tr.dim_ = n;
  tr.times_.push_back(t0);
  tr.states_.push_back(y0.entries());

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double rtol = opts.rel_tol, atol = opts.abs_tol;
  const double hmax = std::min(opts.max_step, std::abs(t1 - t0));

  CVec y = y0.entries(), y1(n), ynew(n);
  CVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), k8(n), k9(n), k10(n), k11(n), k12(n),
      knew(n), k14(n), k15(n), k16(n);

  field(t0, y, k1);
  if (!all_finite(k1)) throw Error(ErrorCode::ImmediateFieldFailure, "field non-finite at start");

  const auto sk = [&](cplx a, cplx b) {
    return atol + rtol * std::max(std::abs(a), std::abs(b));
  };

  // Starting step (Hairer's estimate).
  double h = opts.initial_step;
  if (h <= 0) {
    double dnf = 0, dny = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = sk(y[i], y[i]);
      dnf += std::norm(k1[i] / s);
      dny += std::norm(y[i] / s);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, hmax);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y[i] + dir * h * k1[i];
    field(t0 + dir * h, y1, k2);
    double der2 = 0;
    if (all_finite(k2)) {
      for (std::size_t i = 0; i < n; ++i) der2 += std::norm((k2[i] - k1[i]) / sk(y[i], y[i]));
      der2 = std::sqrt(der2 / n) / h;
    } else {
      der2 = 1e10;
    }
    const double der12 = std::max(der2, std::sqrt(dnf / n));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
    h = std::min({100 * h, h1, hmax});
  }
  h *= dir;

  const double safe = 0.9, fac1 = 0.333, fac2 = 6.0, beta = 0.0;
  const double expo1 = 1.0 / 8.0 - beta * 0.2;
  const double facc1 = 1.0 / fac1, facc2 = 1.0 / fac2;
  double facold = 1e-4;
  bool reject = false, last = false;
  double t = t0;
  const double eps = std::numeric_limits<double>::epsilon();

  while (true) {
    if (tr.accepted_ + tr.rejected_ >= opts.max_steps) {
      tr.termination_ = Termination::StepFailure;
      break;
    }
    if (std::abs(h) <= 10.0 * eps * std::max(1.0, std::abs(t))) {
      if (tr.accepted_ == 0) throw Error(ErrorCode::StepFailure, "step size underflow at start");
      tr.termination_ = Termination::StepFailure;
      break;
    }
    if ((t + 1.01 * h - t1) * dir > 0) {
      h = t1 - t;
      last = true;
    }

    combine<1>(y1, y, h, {a21}, {&k1});
    field(t + c2 * h, y1, k2);
    combine<2>(y1, y, h, {a31, a32}, {&k1, &k2});
    field(t + c3 * h, y1, k3);
    combine<2>(y1, y, h, {a41, a43}, {&k1, &k3});
    field(t + c4 * h, y1, k4);
    combine<3>(y1, y, h, {a51, a53, a54}, {&k1, &k3, &k4});
    field(t + c5 * h, y1, k5);
    combine<3>(y1, y, h, {a61, a64, a65}, {&k1, &k4, &k5});
    field(t + c6 * h, y1, k6);
    combine<4>(y1, y, h, {a71, a74, a75, a76}, {&k1, &k4, &k5, &k6});
    field(t + c7 * h, y1, k7);
    combine<5>(y1, y, h, {a81, a84, a85, a86, a87}, {&k1, &k4, &k5, &k6, &k7});
    field(t + c8 * h, y1, k8);
    combine<6>(y1, y, h, {a91, a94, a95, a96, a97, a98}, {&k1, &k4, &k5, &k6, &k7, &k8});
    field(t + c9 * h, y1, k9);
    combine<7>(y1, y, h, {a101, a104, a105, a106, a107, a108, a109},
               {&k1, &k4, &k5, &k6, &k7, &k8, &k9});
    field(t + c10 * h, y1, k10);
    combine<8>(y1, y, h, {a111, a114, a115, a116, a117, a118, a119, a1110},
               {&k1, &k4, &k5, &k6, &k7, &k8, &k9, &k10});
    field(t + c11 * h, y1, k11);
    combine<9>(y1, y, h, {a121, a124, a125, a126, a127, a128, a129, a1210, a1211},
               {&k1, &k4, &k5, &k6, &k7, &k8, &k9, &k10, &k11});
    field(t + h, y1, k12);

    // 8th-order solution and the two embedded error estimates.
    double err = 0, err2 = 0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx bsum = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] +
                        b10 * k10[i] + b11 * k11[i] + b12 * k12[i];
      ynew[i] = y[i] + h * bsum;
      const double s = sk(y[i], ynew[i]);
      const cplx e3 = bsum - e31 * k1[i] - e32 * k9[i] - e33 * k12[i];
      const cplx e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] +
                      e510 * k10[i] + e511 * k11[i] + e512 * k12[i];
      err2 += std::norm(e3 / s);
      err += std::norm(e5 / s);
      k4[i] = bsum;  // keep the weighted stage sum for the dense output
    }
    if (!std::isfinite(err) || !std::isfinite(err2) || !all_finite(ynew)) finite = false;
    double deno = err + 0.01 * err2;
    if (deno <= 0) deno = 1;
    err = finite ? std::abs(h) * err * std::sqrt(1.0 / (n * deno)) : 1e30;

    const double fac11 = std::pow(err, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = h / fac;

    if (err <= 1.0 && max_abs(ynew) > opts.blow_up_threshold &&
        max_abs(ynew) > 2.0 * max_abs(y)) {
      // Crossing the threshold in one large jump: shorten the step so the
      // interpolant resolves where the crossing happens.
      h *= 0.5;
      last = false;
      continue;
    }
    if (err <= 1.0) {
      field(t + h, ynew, knew);
      if (!all_finite(knew)) {
        // Treat a non-finite derivative at the end point as a rejected step.
        ++tr.rejected_;
        h *= 0.2;
        last = false;
        reject = true;
        continue;
      }
      facold = std::max(err, 1e-4);
      ++tr.accepted_;

      // Dense output coefficients.
      std::array<CVec, 8> r;
      for (auto& v : r) v.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        r[0][i] = y[i];
        const cplx ydiff = ynew[i] - y[i];
        const cplx bspl = h * k1[i] - ydiff;
        r[1][i] = ydiff;
        r[2][i] = bspl;
        r[3][i] = ydiff - h * knew[i] - bspl;
        r[4][i] = d41 * k1[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
                  d410 * k10[i] + d411 * k11[i] + d412 * k12[i];
        r[5][i] = d51 * k1[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
                  d510 * k10[i] + d511 * k11[i] + d512 * k12[i];
        r[6][i] = d61 * k1[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
                  d610 * k10[i] + d611 * k11[i] + d612 * k12[i];
        r[7][i] = d71 * k1[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
                  d710 * k10[i] + d711 * k11[i] + d712 * k12[i];
      }
      combine<8>(y1, y, h, {a141, a147, a148, a149, a1410, a1411, a1412, a1413},
                 {&k1, &k7, &k8, &k9, &k10, &k11, &k12, &knew});
      field(t + c14 * h, y1, k14);
      combine<8>(y1, y, h, {a151, a156, a157, a158, a1511, a1512, a1513, a1514},
                 {&k1, &k6, &k7, &k8, &k11, &k12, &knew, &k14});
      field(t + c15 * h, y1, k15);
      combine<8>(y1, y, h, {a161, a166, a167, a168, a169, a1613, a1614, a1615},
                 {&k1, &k6, &k7, &k8, &k9, &knew, &k14, &k15});
      field(t + c16 * h, y1, k16);
      for (std::size_t i = 0; i < n; ++i) {
        r[4][i] = h * (r[4][i] + d413 * knew[i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
        r[5][i] = h * (r[5][i] + d513 * knew[i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
        r[6][i] = h * (r[6][i] + d613 * knew[i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
        r[7][i] = h * (r[7][i] + d713 * knew[i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
      }

      const double tnew = last ? t1 : t + h;
      tr.step_h_.push_back(h);
      tr.dense_.push_back(std::move(r));

      if (max_abs(ynew) > opts.blow_up_threshold) {
        // Locate where the interpolant crosses the threshold.
        const std::size_t idx = tr.dense_.size() - 1;
        double lo = 0.0, hi = 1.0;
        CVec tmp;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          tr.interpolate(idx, t + mid * h, tmp);
          if (max_abs(tmp) > opts.blow_up_threshold) hi = mid; else lo = mid;
        }
        const double tstar = t + hi * h;
        tr.interpolate(idx, tstar, tmp);
        tr.times_.push_back(tstar);
        tr.states_.push_back(tmp);
        tr.t_reached_ = tstar;
        tr.termination_ = Termination::BlowUp;
        return tr;
      }

      tr.times_.push_back(tnew);
      tr.states_.push_back(ynew);
      tr.t_reached_ = tnew;
      y.swap(ynew);
      k1.swap(knew);
      t = tnew;
      if (last) {
        tr.termination_ = Termination::Completed;
        return tr;
      }
      if (std::abs(hnew) > hmax) hnew = dir * hmax;
      if (reject) hnew = dir * std::min(std::abs(hnew), std::abs(h));
      reject = false;
    } else {
      hnew = h / std::min(facc1, fac11 / safe);
      if (!finite) hnew = 0.2 * h;
      reject = true;
      last = false;
      ++tr.rejected_;
    }
    h = hnew;
  }
  return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<double>& times) {
  os << "t";
  for (std::size_t i = 0; i < traj.dimension(); ++i) os << ",re(y_" << i << "),im(y_" << i << ")";
  os << "\n";
  char buf[64];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  const auto row = [&](double t, const CVec& y) {
    put(t);
    for (const auto& v : y) {
      os << ",";
      put(v.real());
      os << ",";
      put(v.imag());
    }
    os << "\n";
  };
  if (times.empty()) {
    for (std::size_t i = 0; i < traj.num_nodes(); ++i) row(traj.times()[i], traj.node_state(i));
  } else {
    for (double t : times) row(t, traj.eval(t).entries());
  }
}

// ---------------------------------------------------------------------------

cplx ContourPiece::point(double s) const {
  if (kind == Kind::Segment) return a + s * (b - a);
  return center + radius * std::polar(1.0, theta0 + s * (theta1 - theta0));
}

cplx ContourPiece::tangent(double s) const {
  if (kind == Kind::Segment) return b - a;
  return cplx(0, 1) * radius * (theta1 - theta0) * std::polar(1.0, theta0 + s * (theta1 - theta0));
}

double ContourPiece::distance_to(cplx z) const {
  if (kind == Kind::Segment) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double s = len2 > 0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(z - point(s));
  }
  const double sweep = theta1 - theta0;
  if (std::abs(sweep) >= 2 * M_PI - 1e-12) return std::abs(std::abs(z - center) - radius);
  double phi = std::arg(z - center) - theta0;
  // Fraction of the sweep at which the ray through z lies.
  const double two_pi = 2 * M_PI;
  phi = sweep > 0 ? std::fmod(std::fmod(phi, two_pi) + two_pi, two_pi)
                  : -std::fmod(std::fmod(-phi, two_pi) + two_pi, two_pi);
  if (phi / sweep >= 0 && phi / sweep <= 1) return std::abs(std::abs(z - center) - radius);
  return std::min(std::abs(z - point(0)), std::abs(z - point(1)));
}

Contour Contour::segment(cplx a, cplx b) {
  Contour c;
  ContourPiece p;
  p.kind = ContourPiece::Kind::Segment;
  p.a = a;
  p.b = b;
  c.pieces_.push_back(p);
  return c;
}

Contour Contour::circle(cplx center, double radius, double start_angle, bool ccw) {
  Contour c;
  c.arc(center, radius, start_angle, start_angle + (ccw ? 2 * M_PI : -2 * M_PI));
  return c;
}

Contour& Contour::line_to(cplx b) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidArgument, "line_to on empty contour");
  ContourPiece p;
  p.kind = ContourPiece::Kind::Segment;
  p.a = end();
  p.b = b;
  pieces_.push_back(p);
  return *this;
}

Contour& Contour::arc(cplx center, double radius, double theta0, double theta1) {
  ContourPiece p;
  p.kind = ContourPiece::Kind::Arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  pieces_.push_back(p);
  return *this;
}

Contour& Contour::append(const Contour& other) {
  pieces_.insert(pieces_.end(), other.pieces_.begin(), other.pieces_.end());
  return *this;
}

Contour Contour::reversed() const {
  Contour c;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    ContourPiece p = *it;
    if (p.kind == ContourPiece::Kind::Segment) std::swap(p.a, p.b);
    else std::swap(p.theta0, p.theta1);
    c.pieces_.push_back(p);
  }
  return c;
}

cplx Contour::start() const {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidArgument, "empty contour");
  return pieces_.front().point(0);
}

cplx Contour::end() const {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidArgument, "empty contour");
  return pieces_.back().point(1);
}

bool Contour::closed(double tol) const { return std::abs(start() - end()) <= tol; }

double Contour::distance_to(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) d = std::min(d, p.distance_to(z));
  return d;
}

IntegratorOptions default_transport_options() {
  IntegratorOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-14;
  return o;
}

Eigen::Matrix2cd integrate_matrix_ode(const MatrixField& coefficient, const Contour& path,
                                      const Eigen::Matrix2cd& Y0, const IntegratorOptions& opts) {
  Eigen::Matrix2cd Y = Y0;
  for (const auto& piece : path.pieces()) {
    const VectorField f = [&](double s, const CVec& y, CVec& dy) {
      const Eigen::Matrix2cd B = coefficient(piece.point(s));
      if (!B.allFinite() || B.cwiseAbs().maxCoeff() > opts.blow_up_threshold)
        throw Error(ErrorCode::PoleOnPath, "coefficient exceeds threshold on the path");
      const cplx zt = piece.tangent(s);
      Eigen::Matrix2cd Ym;
      Ym << y[0], y[1], y[2], y[3];
      const Eigen::Matrix2cd D = zt * (B * Ym);
      dy[0] = D(0, 0);
      dy[1] = D(0, 1);
      dy[2] = D(1, 0);
      dy[3] = D(1, 1);
    };
    const StateVector y0{Y(0, 0), Y(0, 1), Y(1, 0), Y(1, 1)};
    Trajectory tr;
    try {
      tr = integrate(f, y0, 0.0, 1.0, opts);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ImmediateFieldFailure || e.code() == ErrorCode::StepFailure)
        throw Error(ErrorCode::PoleOnPath, e.what());
      throw;
    }
    if (tr.termination() != Termination::Completed)
      throw Error(ErrorCode::PoleOnPath, "transport did not complete along the path");
    const CVec& ye = tr.node_state(tr.num_nodes() - 1);
    Y << ye[0], ye[1], ye[2], ye[3];
  }
  return Y;
}

}  // namespace asdlab
