#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "asdlab/pfaffian.hpp"

namespace asdlab {

// Theta = e3 dz + v dt + A (sigma1, sigma2, sigma3)^T, with e3 = (0, 0, 1).
struct InvariantDecomposition {
  std::array<ZPoly, 3> v;
  std::array<std::array<ZPoly, 3>, 3> A;
};
InvariantDecomposition decompose(const PfaffianTriple& triple);
std::array<Form, 3> recombine(const InvariantDecomposition& d);

// Scalar in Sigma = c M(s), M(s) = [[i s1, -s3 + i s2], [s3 + i s2, -i s1]].
// Flat uses c = -1/2, for which d Sigma + Sigma ^ Sigma = 0 holds on ASD data;
// Printed uses the printed 1/sqrt(2).
enum class SigmaNormalization { Flat, Printed };

using PolyMatrix = std::array<std::array<ZPoly, 2>, 2>;

// Sigma = -B1 dz - B2 dt with B1 = F / G, B2 = Q / G and G = det A.
struct BuiltConnection {
  PolyMatrix F, Q;
  ZPoly G;
  SigmaNormalization normalization = SigmaNormalization::Flat;

  Eigen::Matrix2cd B1(cplx z) const;
  Eigen::Matrix2cd B2(cplx z) const;
  // Max-abs entry of dB1/dt - dB2/dz + [B1, B2] at (z, sample time).
  double flatness_residual(cplx z) const;
  std::vector<cplx> G_values() const;
};

// Throws DiagonalDegeneration when det A vanishes identically.
BuiltConnection build_connection(const PfaffianTriple& triple,
                                 SigmaNormalization normalization = SigmaNormalization::Flat);

enum class Signature { Definite, Split };
const char* signature_tag(Signature s);
Signature signature_from_tag(const std::string& s);

// Principal part sum_j coeffs[j] / (z - zeta)^(j + 1).
struct Pole {
  cplx zeta;
  int order = 1;
  std::vector<Eigen::Matrix2cd> coeffs;
};

struct RationalConnection {
  Signature signature = Signature::Split;
  std::vector<Pole> poles;
  int infinity_order = 0;  // order lost to z = infinity when deg G < 4
  // When present, eval uses numerator / denominator (coefficients ascending in z)
  // instead of the principal parts.
  std::vector<Eigen::Matrix2cd> numerator;
  std::vector<cplx> denominator;
  // Root clustering diagnostics from the build (zero for synthetic input).
  double max_cluster_spread = 0;
  double min_cluster_separation = 0;

  Eigen::Matrix2cd eval(cplx z) const;
  int total_order() const;
  double max_trace() const;
};

constexpr double kMergeTol = 1e-6;
constexpr double kRealTol = 1e-8;
double merge_threshold(const std::vector<cplx>& points);
bool is_real_pole(cplx zeta);

// Roots of sum c_k z^k: companion-matrix eigenvalues, then one Newton step.
// Leading coefficients below 1e-12 relative are dropped.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

struct RootCluster {
  cplx center;
  int multiplicity = 1;
  double spread = 0;
};
std::vector<RootCluster> merge_roots(const std::vector<cplx>& roots);

// Partial-fraction form of B1 at the sample time.
RationalConnection rational_connection(const BuiltConnection& built, Signature signature);

}  // namespace asdlab
