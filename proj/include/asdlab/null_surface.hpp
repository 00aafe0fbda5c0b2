#pragma once

#include "asdlab/connection.hpp"

namespace asdlab {

// Jet of the root eta(t) of G(z, t) near eta0, found by Newton iteration on
// jets applied to d^(m-1) G / dz^(m-1) for a root of multiplicity m.
Jet pole_trajectory(const BuiltConnection& b, cplx eta0, int multiplicity = 1);

struct NullCheck {
  // Largest |g(X, Y)| over a unit basis of the plane killed by Theta1, Theta2
  // at z = eta, with g = sum (e^a)^2.
  double null_defect = 0;
  // |d Theta_i ^ Theta1 ^ Theta2| over the size of Theta1 ^ Theta2, at z = eta(t).
  double frobenius = 0;
  double value() const { return std::max(null_defect, frobenius); }
};

// Throws NotARealPole when |Im eta| exceeds 1e-10 at the sample time.
NullCheck null_direction_check(const PfaffianTriple& triple, const Coframe& frame, const Jet& eta);

}  // namespace asdlab
