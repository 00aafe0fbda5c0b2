#pragma once

#include <array>
#include <vector>

#include "asdlab/asd_systems.hpp"
#include "asdlab/forms.hpp"

namespace asdlab {

// Which metric flow generates the t-dependence of the frame. The alpha1 shift
// is added to the first alpha equation; it is non-zero only for probes that
// need a deliberate non-solution.
struct FlowModel {
  bool nondiagonal = false;
  XiEquations xi_form = XiEquations::AsdConsistent;
  cplx alpha1_shift = 0.0;

  VectorField field() const;
  // Taylor jets of (w, alpha, xi) through the packed state (6 or 9 entries;
  // xi is zero for the diagonal flow).
  std::array<Jet, 9> jets(const CVec& state) const;
};

// e^0 = scale[0] dt, e^i = scale[i] sigma_i, with scale = (abc, a, b, c).
struct Coframe {
  std::array<Form, 4> e;
  std::array<Jet, 4> scale;
  Structure structure;
};
Coframe coframe_from_jets(const std::array<Jet, 9>& y);

// omega[i][j] = omega^i_j, orthonormal indices.
struct ConnectionForms {
  std::array<std::array<Form, 4>, 4> omega;
};
// Levi-Civita forms of a diagonal-scale coframe, from the structure constants
// of de^i by the Koszul-type formula.
ConnectionForms levi_civita(const Coframe& frame);
// max |coefficient| of de^i + omega^i_j ^ e^j at the sample time.
double structure_residual(const Coframe& frame, const ConnectionForms& conn);

enum class Theta3Reading { Consistent, PrintedSymmetric, PrintedVerbatim };
const char* theta3_name(Theta3Reading r);

struct PfaffianTriple {
  std::array<Form, 3> theta;
  Structure structure;
};

// Throws StructureEquationViolated if omega is not antisymmetric or the first
// structure equation fails by more than 1e-10.
PfaffianTriple pfaffian_forms(const Coframe& frame, const ConnectionForms& conn,
                              Theta3Reading reading = Theta3Reading::Consistent);

// Max over the z samples and i of |dTheta_i ^ Theta_123| / max_pq |phi_p ^ phi_q ^ Theta_123|,
// i.e. the component of dTheta_i left after reducing modulo the ideal.
// Throws DegenerateTriple when the three forms are dependent at a sample.
double asd_residual(const PfaffianTriple& triple, const std::vector<cplx>& zs);

struct TwistorSample {
  double t = 0;
  Coframe frame;
  ConnectionForms omega;
  PfaffianTriple triple;
};
TwistorSample twistor_sample(const FlowModel& model, double t, const CVec& state,
                             Theta3Reading reading = Theta3Reading::Consistent);

// Top-degree coefficient extraction helpers, evaluated at (z, sample time).
cplx coefficient_at(const Form& f, int mask, cplx z);

}  // namespace asdlab
