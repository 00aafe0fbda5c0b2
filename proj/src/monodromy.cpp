#include "asdlab/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

double segment_distance(cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double n = std::norm(d);
  if (n == 0) return std::abs(z - a);
  const double s = std::clamp(((z - a) * std::conj(d)).real() / n, 0.0, 1.0);
  return std::abs(z - (a + s * d));
}

std::vector<cplx> locations(const RationalConnection& b1) {
  std::vector<cplx> z;
  for (const auto& p : b1.poles) z.push_back(p.zeta);
  return z;
}

std::vector<cplx> track(const std::vector<cplx>& previous, const std::vector<cplx>& current) {
  if (previous.size() != current.size())
    throw Error(ErrorCode::PoleCollision, "pole count changed along the family");
  std::vector<cplx> out(previous.size());
  std::vector<bool> used(current.size(), false);
  for (std::size_t i = 0; i < previous.size(); ++i) {
    std::size_t best = current.size();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < current.size(); ++j)
      if (!used[j] && std::abs(current[j] - previous[i]) < d) {
        d = std::abs(current[j] - previous[i]);
        best = j;
      }
    used[best] = true;
    out[i] = current[best];
  }
  return out;
}

// Locations as tracked, separation circle for one pole set.
PoleLoop circle_for(const std::vector<cplx>& z, const std::vector<int>& set) {
  if (set.empty()) throw Error(ErrorCode::InvalidArgument, "loop must enclose at least one pole");
  cplx c = 0;
  for (int i : set) c += z.at(i);
  c /= double(set.size());
  double spread = 0;
  for (int i : set) spread = std::max(spread, std::abs(z[i] - c));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    if (std::find(set.begin(), set.end(), int(i)) == set.end()) gap = std::min(gap, std::abs(z[i] - c) - spread);
  if (!(gap > 0)) throw Error(ErrorCode::PoleCollision, "no circle separates the chosen poles from the rest");
  const double r = std::isfinite(gap) ? spread + 0.5 * gap : spread + 1.0;
  return {Contour::circle(c, r), set};
}

}  // namespace

double pole_separation(const RationalConnection& b1) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b1.poles.size(); ++i)
    for (std::size_t j = i + 1; j < b1.poles.size(); ++j)
      s = std::min(s, std::abs(b1.poles[i].zeta - b1.poles[j].zeta));
  return s;
}

double default_clearance(const RationalConnection& b1) {
  const double s = pole_separation(b1);
  return std::isfinite(s) ? 1e-2 * s : 1e-2;
}

Eigen::Matrix2cd monodromy(const RationalConnection& b1, const Contour& loop, double clearance,
                           const IntegratorOptions& opts) {
  if (!loop.closed(1e-12 * (1 + std::abs(loop.start()))))
    throw Error(ErrorCode::InvalidArgument, "monodromy needs a closed loop");
  if (clearance < 0) clearance = default_clearance(b1);
  for (const auto& p : b1.poles)
    if (loop.distance_to(p.zeta) < clearance) throw Error(ErrorCode::PoleOnPath, "loop passes within clearance of a pole");
  return integrate_matrix_ode([&](cplx z) { return b1.eval(z); }, loop, Eigen::Matrix2cd::Identity(), opts);
}

PoleLoop circle_around(const RationalConnection& b1, const std::vector<int>& poles) {
  return circle_for(locations(b1), poles);
}

LassoSet lassos(const RationalConnection& b1) {
  const std::vector<cplx> z = locations(b1);
  const std::size_t n = z.size();
  double rmax = 0;
  for (cplx p : z) rmax = std::max(rmax, std::abs(p));
  const double sep = pole_separation(b1);
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d = std::min(d, std::abs(z[i] - z[j]));
    nearest[i] = std::isfinite(d) ? d : 1.0;
  }
  const double margin = 0.02 * (std::isfinite(sep) ? sep : 1.0);

  // First (circle size, direction, distance) whose tails stay clear of every
  // other pole's disk.
  // Short tails and large circles keep the lasso monodromies well conditioned.
  for (double frac : {0.3, 0.2, 0.15, 0.1, 0.08}) {
    std::vector<double> rho(n);
    double rho_max = 0;
    for (std::size_t i = 0; i < n; ++i) rho_max = std::max(rho_max, rho[i] = frac * nearest[i]);
    for (double rscale : {1.25, 1.5, 2.0, 3.0}) {
      const double R = rscale * rmax + 2 * rho_max + margin;
      for (int k = 0; k < 32; ++k) {
        const double phi = 0.1 + k * (2 * M_PI / 32);
        const cplx b = std::polar(R, phi);
        bool clear = true;
        for (std::size_t i = 0; i < n && clear; ++i) {
          const cplx tip = z[i] + rho[i] * (b - z[i]) / std::abs(b - z[i]);
          for (std::size_t j = 0; j < n && clear; ++j)
            if (j != i && segment_distance(b, tip, z[j]) <= rho[j] + margin) clear = false;
        }
        if (!clear) continue;

        LassoSet out;
        out.basepoint = b;
        out.direction = phi;
        out.order.resize(n);
        std::iota(out.order.begin(), out.order.end(), 0);
        const cplx rot = std::polar(1.0, -(phi + M_PI));
        std::sort(out.order.begin(), out.order.end(),
                  [&](int a, int c) { return std::arg((z[a] - b) * rot) < std::arg((z[c] - b) * rot); });
        for (int i : out.order) {
          const double th = std::arg(b - z[i]);
          const cplx tip = z[i] + std::polar(rho[i], th);
          Contour c = Contour::segment(b, tip);
          c.arc(z[i], rho[i], th, th + 2 * M_PI);
          c.line_to(b);
          out.loops.push_back(c);
        }
        return out;
      }
    }
  }
  throw Error(ErrorCode::PoleOnPath, "no basepoint direction gives clear lasso tails");
}

TotalMonodromy total_monodromy(const RationalConnection& b1) {
  const LassoSet ls = lassos(b1);
  TotalMonodromy t;
  t.order = ls.order;
  t.product = Eigen::Matrix2cd::Identity();
  for (const auto& l : ls.loops) {
    t.per_pole.push_back(monodromy(b1, l));
    t.product = t.per_pole.back() * t.product;
  }
  t.big_circle = monodromy(b1, Contour::circle(0.0, std::abs(ls.basepoint), ls.direction));
  return t;
}

DriftReport isomonodromy_drift(const ConnectionFamily& family, const std::vector<double>& times,
                               const std::vector<std::vector<int>>& loops, int substeps) {
  if (times.empty()) throw Error(ErrorCode::InvalidArgument, "drift needs at least one time");
  if (substeps < 1) throw Error(ErrorCode::InvalidArgument, "substeps must be positive");
  DriftReport rep;
  rep.times = times;
  rep.traces.assign(loops.size(), {});

  RationalConnection rc = family(times[0]);
  std::vector<cplx> z = locations(rc);
  const auto sample = [&](const RationalConnection& c, const std::vector<cplx>& tracked) {
    // Tracked order may differ from the connection's own ordering.
    RationalConnection ordered = c;
    for (std::size_t i = 0; i < tracked.size(); ++i)
      for (const auto& p : c.poles)
        if (p.zeta == tracked[i]) ordered.poles[i] = p;
    for (std::size_t l = 0; l < loops.size(); ++l) {
      const PoleLoop loop = circle_for(tracked, loops[l]);
      const double clearance = default_clearance(ordered);
      for (std::size_t i = 0; i < tracked.size(); ++i) {
        const bool inside = std::abs(tracked[i] - loop.contour.pieces()[0].center) < loop.contour.pieces()[0].radius;
        const bool member = std::find(loops[l].begin(), loops[l].end(), int(i)) != loops[l].end();
        if (inside != member) throw Error(ErrorCode::PoleCollision, "a pole crossed a loop");
        if (loop.contour.distance_to(tracked[i]) < clearance)
          throw Error(ErrorCode::PoleCollision, "a pole came within clearance of a loop");
      }
      rep.traces[l].push_back(monodromy(ordered, loop.contour, clearance).trace());
    }
  };
  sample(rc, z);
  for (std::size_t k = 1; k < times.size(); ++k) {
    for (int s = 1; s <= substeps; ++s) {
      const double t = times[k - 1] + (times[k] - times[k - 1]) * double(s) / substeps;
      rc = family(t);
      const std::vector<cplx> next = track(z, locations(rc));
      // An excluded pole whose step passes through the old or new disk has
      // crossed the loop, even if it lands outside again.
      for (const auto& set : loops) {
        const ContourPiece before = circle_for(z, set).contour.pieces()[0];
        const ContourPiece after = circle_for(next, set).contour.pieces()[0];
        for (std::size_t i = 0; i < z.size(); ++i) {
          if (std::find(set.begin(), set.end(), int(i)) != set.end()) continue;
          if (segment_distance(z[i], next[i], before.center) < before.radius ||
              segment_distance(z[i], next[i], after.center) < after.radius)
            throw Error(ErrorCode::PoleCollision, "a pole crossed a loop");
        }
      }
      z = next;
    }
    sample(rc, z);
  }
  for (const auto& tr : rep.traces)
    for (cplx v : tr) rep.drift = std::max(rep.drift, std::abs(v - tr[0]));
  return rep;
}

}  // namespace asdlab
