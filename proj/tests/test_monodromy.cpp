#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asdlab/error.hpp"
#include "asdlab/monodromy.hpp"

using namespace asdlab;
using M2 = Eigen::Matrix2cd;

namespace {

M2 diag(cplx a) {
  M2 m;
  m << a, 0, 0, -a;
  return m;
}

RationalConnection simple_poles(std::vector<std::pair<cplx, M2>> poles) {
  RationalConnection rc;
  for (auto& [z, r] : poles) rc.poles.push_back({z, 1, {r}});
  return rc;
}

ConnectionFamily asd_family(const FlowModel& model, const Trajectory& traj, Signature s) {
  return [model, traj, s](double t) {
    return rational_connection(build_connection(twistor_sample(model, t, traj.eval(t).entries()).triple), s);
  };
}

// Pole indices, at t = 0, of the poles nearest the given points.
std::vector<int> nearest_poles(const RationalConnection& rc, std::vector<cplx> points) {
  std::vector<int> out;
  for (cplx p : points) {
    int best = 0;
    for (int i = 1; i < int(rc.poles.size()); ++i)
      if (std::abs(rc.poles[i].zeta - p) < std::abs(rc.poles[best].zeta - p)) best = i;
    out.push_back(best);
  }
  return out;
}

}  // namespace

TEST_CASE("monodromy oracles") {
  const auto one = simple_poles({{0.0, diag(0.5)}});
  const M2 M = monodromy(one, Contour::circle(0.0, 0.3));
  CHECK(std::abs(M.trace() + 2.0) <= 1e-8);
  CHECK((M + M2::Identity()).cwiseAbs().maxCoeff() <= 1e-8);

  // exp(2 pi i a) eigenvalues for a generic residue.
  const auto gen = simple_poles({{cplx(0.2, 0.1), diag(0.3)}});
  const cplx tr = monodromy(gen, Contour::circle(cplx(0.2, 0.1), 0.5)).trace();
  CHECK(std::abs(tr - 2.0 * std::cos(2 * M_PI * 0.3)) <= 1e-8);

  const M2 E = monodromy(one, Contour::circle(cplx(2.0, 1.0), 0.5));
  CHECK(std::abs(E.trace() - 2.0) <= 1e-10);
  CHECK(std::abs(E.determinant() - 1.0) <= 1e-10);

  try {
    monodromy(one, Contour::circle(0.5, 0.5));
    FAIL("loop through a pole accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleOnPath);
  }
}

TEST_CASE("lasso product matches the loop around all poles") {
  const cplx i(0, 1);
  const std::vector<std::pair<CVec, Signature>> data{
      {{0.9, 1.6, 2.4, 0.3, -0.6, 0.9}, Signature::Definite},
      {{1.2, 0.8 * i, -1.7 * i, 0.4, -0.3, 0.1}, Signature::Split},
      {{1.1, 1.4, 2.0, 0.5, -0.4, 0.2}, Signature::Definite},
  };
  for (std::size_t k = 0; k < data.size(); ++k) {
    const auto& [y, s] = data[k];
    const auto rc = rational_connection(build_connection(twistor_sample(FlowModel{}, 0.0, y).triple), s);
    const TotalMonodromy tm = total_monodromy(rc);
    CHECK(tm.order.size() == 4);
    CHECK(std::abs(tm.big_circle.trace() - 2.0) <= 1e-8);
    CHECK(std::abs(tm.product.determinant() - 1.0) <= 1e-6);
    double scale = 1;
    for (const auto& m : tm.per_pole) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    // Lasso monodromies with |M| ~ 1e4 lose digits to cancellation in the
    // product; the bound is absolute for the well-conditioned data only.
    if (scale < 100)
      CHECK(std::abs(tm.product.trace() - 2.0) <= 1e-8);
    else
      CHECK(std::abs(tm.product.trace() - 2.0) <= 1e-8 * scale * scale);
  }
}

TEST_CASE("isomonodromy drift") {
  const CVec y0{0.9, 1.6, 2.4, 0.3, -0.6, 0.9};
  const std::vector<double> times{0.0, 0.1, 0.2, 0.3, 0.4};
  const FlowModel model;
  const auto traj = integrate(model.field(), StateVector(y0), 0.0, 0.4);
  const auto fam = asd_family(model, traj, Signature::Definite);
  const auto rc0 = fam(0.0);
  // Poles are real here: loops around the positive pair and the inner pair.
  const std::vector<std::vector<int>> loops{nearest_poles(rc0, {0.47, 2.1}), nearest_poles(rc0, {0.47, -0.47})};
  const DriftReport ok = isomonodromy_drift(fam, times, loops);
  CHECK(ok.drift <= 1e-6);
  CHECK(std::abs(ok.traces[0][0] - 2.0) > 1e-3);  // not a trivial loop

  FlowModel bad;
  bad.alpha1_shift = 0.1;
  const auto btraj = integrate(bad.field(), StateVector(y0), 0.0, 0.4);
  const DriftReport pert = isomonodromy_drift(asd_family(bad, btraj, Signature::Definite), times, loops);
  CHECK(pert.drift >= 1e-3);

  const DriftReport frozen = isomonodromy_drift([&](double) { return rc0; }, times, loops);
  CHECK(frozen.drift == 0.0);
}

TEST_CASE("pole crossing a loop") {
  const ConnectionFamily fam = [](double t) {
    return simple_poles({{0.0, diag(0.3)}, {3.0 - 3.0 * t, diag(-0.3)}});
  };
  try {
    isomonodromy_drift(fam, {0.0, 1.2}, {{0}});
    FAIL("crossing not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleCollision);
  }
  CHECK_NOTHROW(isomonodromy_drift(fam, {0.0, 0.5}, {{0}}));
}
