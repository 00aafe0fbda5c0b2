#pragma once

#include <functional>
#include <vector>

#include "asdlab/connection.hpp"
#include "asdlab/ode.hpp"

namespace asdlab {

// Smallest distance between distinct poles (infinity for one pole).
double pole_separation(const RationalConnection& b1);
// Default minimum distance between a loop and any pole: 1e-2 x separation.
double default_clearance(const RationalConnection& b1);

// Transport of dY/dz = B1 Y once around the closed loop from Y = I. Throws
// PoleOnPath if the loop comes closer than `clearance` to a pole (a negative
// clearance selects the default).
Eigen::Matrix2cd monodromy(const RationalConnection& b1, const Contour& loop, double clearance = -1.0,
                           const IntegratorOptions& opts = default_transport_options());

// Counterclockwise circle through nothing but the poles listed.
struct PoleLoop {
  Contour contour;
  std::vector<int> enclosed;
};
// Circle centered at the centroid of the chosen poles, with radius exceeding
// their spread by half the gap to the nearest excluded pole. Throws
// PoleCollision when no such circle separates them.
PoleLoop circle_around(const RationalConnection& b1, const std::vector<int>& poles);

// Lassos from a common basepoint, one per pole, in composition order: their
// product T(l_k) ... T(l_1) is the monodromy of a large loop around all poles.
struct LassoSet {
  cplx basepoint;
  double direction = 0;  // basepoint argument
  std::vector<int> order;
  std::vector<Contour> loops;
};
LassoSet lassos(const RationalConnection& b1);

struct TotalMonodromy {
  std::vector<Eigen::Matrix2cd> per_pole;  // in LassoSet order
  std::vector<int> order;
  Eigen::Matrix2cd product;
  Eigen::Matrix2cd big_circle;
};
TotalMonodromy total_monodromy(const RationalConnection& b1);

using ConnectionFamily = std::function<RationalConnection(double t)>;

struct DriftReport {
  std::vector<double> times;
  std::vector<std::vector<cplx>> traces;  // [loop][time]
  double drift = 0;
};

// Traces of circle loops around the given pole sets (indices at times[0]),
// deformed through `substeps` intermediate times between samples while
// poles are tracked by nearest matching. Throws PoleCollision if a pole
// would cross a loop.
DriftReport isomonodromy_drift(const ConnectionFamily& family, const std::vector<double>& times,
                               const std::vector<std::vector<int>>& loops, int substeps = 4);

}  // namespace asdlab
