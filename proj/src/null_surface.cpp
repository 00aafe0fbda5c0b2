#include "asdlab/null_surface.hpp"

#include <algorithm>
#include <cmath>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

constexpr int kSpaceTop = (1 << kDt) | (1 << kS1) | (1 << kS2) | (1 << kS3);

Form restrict_to(const Form& theta, const Jet& eta) {
  Form out;
  for (int b = kDt; b <= kS3; ++b)
    if (!theta.one(b).empty()) out += Form::basis(b, ZPoly(theta.one(b).eval(eta)));
  return out;
}

cplx top_value(const Form& f) { return f[kSpaceTop].empty() ? cplx(0.0) : f[kSpaceTop][0].value(); }

}  // namespace

Jet pole_trajectory(const BuiltConnection& b, cplx eta0, int multiplicity) {
  if (multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be positive");
  ZPoly h = b.G;
  for (int k = 1; k < multiplicity; ++k) h = h.dz();
  const ZPoly hz = h.dz();
  Jet eta(eta0);
  // Each pass doubles the number of correct Taylor coefficients.
  for (int it = 0; it < 12; ++it) eta = eta - h.eval(eta) / hz.eval(eta);
  return eta;
}

NullCheck null_direction_check(const PfaffianTriple& triple, const Coframe& frame, const Jet& eta) {
  if (std::abs(eta.value().imag()) > 1e-10) throw Error(ErrorCode::NotARealPole, "pole is not on the real axis");
  const Form t1 = restrict_to(triple.theta[0], eta), t2 = restrict_to(triple.theta[1], eta);

  // Rows of Theta_i in the e-frame; the plane is their common kernel.
  Eigen::Matrix<cplx, 2, 4> K;
  for (int a = 0; a < 4; ++a) {
    const cplx s = frame.scale[a].value();
    K(0, a) = (t1.one(a).empty() ? cplx(0.0) : t1.one(a)[0].value()) / s;
    K(1, a) = (t2.one(a).empty() ? cplx(0.0) : t2.one(a)[0].value()) / s;
  }
  Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 4>> svd(K, Eigen::ComputeFullV);
  const Eigen::Matrix<cplx, 4, 2> X = svd.matrixV().rightCols<2>();
  NullCheck r;
  const Eigen::Matrix2cd g = X.transpose() * X;
  r.null_defect = g.cwiseAbs().maxCoeff();

  const Form t12 = wedge(t1, t2);
  double norm = 0;
  for (int p = kDt; p <= kS3; ++p)
    for (int q = p + 1; q <= kS3; ++q)
      norm = std::max(norm, std::abs(top_value(wedge(wedge(Form::basis(p), Form::basis(q)), t12))));
  if (!(norm > 0)) throw Error(ErrorCode::DegenerateTriple, "restricted forms are dependent");
  for (const Form& t : {t1, t2})
    r.frobenius = std::max(r.frobenius, std::abs(top_value(wedge(exterior_derivative(t, triple.structure), t12))) / norm);
  return r;
}

}  // namespace asdlab
