#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "asdlab/jet.hpp"
#include "asdlab/ode.hpp"
#include "asdlab/painleve.hpp"

namespace asdlab {

// Packed layout used by the flows: (w1, w2, w3, a1, a2, a3[, xi1, xi2, xi3]).
// Entries are complex so split-signature data (imaginary w2, w3) runs through
// the same equations.
struct DiagonalState {
  double t = 0;
  std::array<cplx, 3> w{};
  std::array<cplx, 3> alpha{};

  StateVector packed() const;
  static DiagonalState unpack(double t, const CVec& y);
};

struct NonDiagonalState {
  double t = 0;
  std::array<cplx, 3> w{};
  std::array<cplx, 3> alpha{};
  std::array<cplx, 3> xi{};

  StateVector packed() const;
  static NonDiagonalState unpack(double t, const CVec& y);
  DiagonalState diagonal_part() const { return {t, w, alpha}; }
};

// Which form of the xi equations to use. AsdConsistent is the form for which
// the Pfaffian system closes; Printed keeps the printed coefficients, with the
// ratio in the third equation made symmetric (xi1 / (w2 w3)).
enum class XiEquations { AsdConsistent, Printed };

template <class S>
std::array<S, 6> diagonal_flow(const std::array<S, 6>& y) {
  const S &w1 = y[0], &w2 = y[1], &w3 = y[2], &a1 = y[3], &a2 = y[4], &a3 = y[5];
  return {-w2 * w3 + w1 * (a2 + a3), -w3 * w1 + w2 * (a3 + a1), -w1 * w2 + w3 * (a1 + a2),
          -a2 * a3 + a1 * (a2 + a3), -a3 * a1 + a2 * (a3 + a1), -a1 * a2 + a3 * (a1 + a2)};
}

template <class S>
std::array<S, 9> nondiagonal_flow(const std::array<S, 9>& y, XiEquations form) {
  std::array<S, 3> w{y[0], y[1], y[2]}, a{y[3], y[4], y[5]}, xi{y[6], y[7], y[8]}, w2, r;
  for (int i = 0; i < 3; ++i) w2[i] = w[i] * w[i];
  for (int i = 0; i < 3; ++i) r[i] = xi[i] / (w[(i + 1) % 3] * w[(i + 2) % 3]);

  std::array<S, 9> dy;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    dy[i] = -w[j] * w[k] + w[i] * (a[j] + a[k]);
    dy[3 + i] = -a[j] * a[k] + a[i] * (a[j] + a[k]) +
                0.25 * (w2[j] - w2[k]) * (w2[j] - w2[k]) * r[i] * r[i] +
                0.25 * (w2[k] - w2[i]) * (3.0 * w2[i] + w2[k]) * r[j] * r[j] +
                0.25 * (w2[j] - w2[i]) * (3.0 * w2[i] + w2[j]) * r[k] * r[k];
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const S quad = r[j] * r[k] * (-2.0 * w2[j] * w2[k] + w2[k] * w2[i] + w2[i] * w2[j]);
    S lin;
    if (form == XiEquations::AsdConsistent) {
      lin = r[i] * (a[j] * w2[j] - a[k] * w2[k] + 3.0 * a[j] * w2[k] - 3.0 * a[k] * w2[j]);
    } else {
      // Printed: +3 a_k w_j^2 everywhere, and w2^2 in place of w3^2 in the second.
      const S& last = (i == 1) ? w2[1] : w2[j];
      lin = r[i] * (a[j] * w2[j] - a[k] * w2[k] + 3.0 * a[j] * w2[k] + 3.0 * a[k] * last);
    }
    const S dr = (quad + lin) / (w2[j] - w2[k]);
    dy[6 + i] = dr * w[j] * w[k] + r[i] * (dy[j] * w[k] + w[j] * dy[k]);
  }
  return dy;
}

// Time derivative; the t field of the result is left at the input time.
DiagonalState diagonal_rhs(const DiagonalState& s);
// Throws DegenerateW when two w's (or two w^2's) coincide within 1e-12 relative.
NonDiagonalState nondiagonal_rhs(const NonDiagonalState& s,
                                 XiEquations form = XiEquations::AsdConsistent);

VectorField diagonal_field();
VectorField nondiagonal_field(XiEquations form = XiEquations::AsdConsistent);

Trajectory integrate_diagonal(const DiagonalState& s0, double t1, const IntegratorOptions& opts = {});
Trajectory integrate_nondiagonal(const NonDiagonalState& s0, double t1,
                                 XiEquations form = XiEquations::AsdConsistent,
                                 const IntegratorOptions& opts = {});

// Throws DegenerateAlpha when the denominator vanishes within 1e-12 relative.
cplx first_integral_k(const DiagonalState& s);

enum class Family { Generic, Diagonal, AtiyahHitchin, BGPP };
const char* family_name(Family f);
Family detect_family(const DiagonalState& s);
Family detect_family(const NonDiagonalState& s);

enum class MetricSignature { Definite, NegativeDefinite, Split, Complex };
const char* signature_name(MetricSignature s);

// a = sqrt(w2 w3 / w1) (principal), b = w3 / a, c = w2 / a.
struct MetricCoefficients {
  cplx a, b, c;
  MetricSignature signature = MetricSignature::Definite;
  bool riemannian = true;  // all three products positive
  std::array<double, 3> magnitudes{};
};
MetricCoefficients metric_coefficients(const DiagonalState& s);

// Reduction to Painleve VI.
enum class ParamDictionary { Certified, Printed };

struct ReducedSample {
  double t = 0;
  cplx x, q;
  cplx dq_dx;
  cplx d2q_dx2;  // from the same jets, for residual checks without differencing
};

struct ReducedData {
  std::vector<ReducedSample> samples;
  cplx k;
  int branch = 1;  // sign in front of sqrt(2k)
  std::vector<double> dropped_stationary_x;
  std::vector<double> dropped_fixed_singularity;
  std::vector<double> dropped_q_denominator;
};

struct Reduction {
  ReducedData data;
  PainleveParams params;
  PainleveParams printed_params;
};

PainleveParams pvi_parameters(cplx k, int branch, ParamDictionary dict = ParamDictionary::Certified);

// x and q at a state, with jets in t. Exposed for tests and the CLI.
struct ReductionJets {
  Jet x, q;
};
ReductionJets reduction_jets(const DiagonalState& s, cplx k, int branch);

// Samples the trajectory at the given times (or at its nodes when empty).
Reduction reduce_to_pvi(const Trajectory& traj, int branch = 1,
                        const std::vector<double>& times = {},
                        ParamDictionary dict = ParamDictionary::Certified);

// PVI samples from a reduction, with q'' from central differences of the
// chain-rule dq/dx along the trajectory (step h in t).
std::vector<PainleveSample> finite_difference_samples(const Trajectory& traj, const ReducedData& data,
                                                      double h = 1e-4);
std::vector<PainleveSample> analytic_samples(const ReducedData& data);

struct FrameRotation {
  std::vector<double> times;
  std::vector<Eigen::Matrix3d> R;
  double max_orthogonality_defect = 0;  // max ||R^T R - I|| over samples
};

// Integrates R' = Xi(t) R with Xi = [[0, xi3, -xi2], [-xi3, 0, xi1], [xi2, -xi1, 0]]
// from the xi entries (6..8) of a non-diagonal trajectory. Requires real xi.
FrameRotation reconstruct_frame_rotation(const Trajectory& traj, const Eigen::Matrix3d& R0,
                                         const std::vector<double>& times);

}  // namespace asdlab
