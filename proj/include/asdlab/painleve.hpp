#pragma once

#include <string>
#include <vector>

#include "asdlab/ode.hpp"

namespace asdlab {

enum class PainleveKind { I, II, III, IV, V, VI };

const char* kind_name(PainleveKind kind);
PainleveKind kind_from_name(const std::string& name);
// Number of meaningful parameter slots: I 0, II 1, IV 2, III/V/VI 4.
int parameter_arity(PainleveKind kind);

struct PainleveParams {
  PainleveKind kind = PainleveKind::VI;
  cplx alpha = 0, beta = 0, gamma = 0, delta = 0;

  // Throws InvalidArgument when a slot beyond the kind's arity is non-zero.
  void validate() const;
  static PainleveParams make(PainleveKind kind, std::vector<cplx> values);
  cplx slot(int i) const;
};

struct PainlevePoint {
  cplx x, q, qp;
};

struct PainleveSample {
  cplx x, q, qp, qpp;
};

// d^2q/dx^2 for the given kind. Throws SingularPoint on the excluded sets.
cplx rhs(const PainleveParams& params, const PainlevePoint& p);

// (q, qp) -> (qp, rhs) along the line x = x0 + dir * s, with s the real
// integration variable (so ds-derivatives carry the factor dir).
VectorField as_first_order(const PainleveParams& params, cplx x0 = 0.0, cplx dir = 1.0);

// max |qpp - rhs| / (1 + |qpp|) over the samples.
double residual(const PainleveParams& params, const std::vector<PainleveSample>& samples);
// Same normalization on precomputed (qpp, rhs) pairs.
double normalized_residual(const std::vector<std::pair<cplx, cplx>>& qpp_rhs);

struct SingularitySet {
  std::vector<cplx> finite;
  bool infinity = true;
};

SingularitySet fixed_singularities(PainleveKind kind);

}  // namespace asdlab
