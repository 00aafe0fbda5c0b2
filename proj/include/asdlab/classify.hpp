#pragma once

#include <string>
#include <vector>

#include "asdlab/connection.hpp"
#include "asdlab/painleve.hpp"

namespace asdlab {

enum class PoleCase { A, B, C, D, E };
const char* case_tag(PoleCase c);
PoleCase case_from_tag(const std::string& tag);
// Split admits a-e, definite admits a and b.
bool case_allowed(Signature s, PoleCase c);

struct Exponent {
  std::string name;  // theta0, theta1, theta_inf, theta, theta2 or alpha
  cplx squared;      // theta^2 as computed; for alpha the value itself
  cplx value;        // principal square root of `squared` (alpha: copied)
};

// Distances to the classification thresholds.
struct ClassificationMargins {
  double max_cluster_spread = 0;
  double min_cluster_separation = 0;
  double max_real_imag = 0;     // largest |Im| among poles labelled real
  double min_complex_imag = 0;  // smallest |Im| among poles labelled complex
  double reality_defect = 0;    // worst distance from a pole's image to its partner
  double merge_tolerance = 0;
};

struct PoleConfig {
  Signature signature = Signature::Split;
  PoleCase pole_case = PoleCase::A;
  // Indices into the connection's poles, in the order the case formulas use
  // them: (a) zeta0, zeta1; (b) eta, zeta1; (c) zeta; (d) eta0, eta1; (e) eta;
  // definite (a) zeta0, zeta1; definite (b) zeta.
  std::vector<int> labelled;
  std::vector<Exponent> exponents;
  ClassificationMargins margins;
  // Case (e) only: det C1 vanishes, giving Painleve I instead of II.
  bool degenerate_leading = false;

  const Exponent& exponent(const std::string& name) const;
};

// Collapses the divisor, checks the signature's reality involution and assigns
// the case; exponents are filled by local_exponents. Throws RealityViolation
// and UnclassifiableConfiguration.
PoleConfig classify_poles(const RationalConnection& b1, Signature signature);

// Exponent formulas of each case. Throws DegenerateTrace when a trace
// denominator vanishes within 1e-12 relative.
std::vector<Exponent> local_exponents(const RationalConnection& b1, const PoleConfig& config);

// theta^2 = 2 tr A^2.
cplx theta_squared_residue(const Eigen::Matrix2cd& A);
// theta^2 = 2 (tr A C)^2 / tr C^2.
cplx theta_squared_pair(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& C);
cplx principal_theta(cplx squared);

PainleveParams painleve_parameters(const PoleConfig& config);

enum class Interpretation { Generic, HermitianStructure, OneNullSurfaceFamily, TwoNullSurfaceFamilies };
const char* interpretation_name(Interpretation i);
Interpretation geometric_interpretation(Signature s, PoleCase c);
inline Interpretation geometric_interpretation(const PoleConfig& c) {
  return geometric_interpretation(c.signature, c.pole_case);
}

struct Classification {
  PoleConfig config;
  PainleveParams params;
  Interpretation interpretation = Interpretation::Generic;
};
Classification classify(const RationalConnection& b1, Signature signature);

}  // namespace asdlab
