#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asdlab/classify.hpp"
#include "asdlab/error.hpp"
#include "asdlab/null_surface.hpp"

using namespace asdlab;

namespace {

const cplx kI(0.0, 1.0);

struct Data {
  TwistorSample sample;
  BuiltConnection built;
  RationalConnection rc;
};

Data at(const CVec& y, Signature s) {
  Data d{twistor_sample(FlowModel{}, 0.0, y), {}, {}};
  d.built = build_connection(d.sample.triple);
  d.rc = rational_connection(d.built, s);
  return d;
}

}  // namespace

TEST_CASE("pole trajectory follows the root of G") {
  const auto d = at({0.9, 1.6, 2.4, 0.3, -0.6, 0.9}, Signature::Definite);
  const Jet eta = pole_trajectory(d.built, d.rc.poles[0].zeta);
  CHECK(std::abs(eta.value() - d.rc.poles[0].zeta) < 1e-10);
  const Jet g = d.built.G.eval(eta);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(g[k]) < 1e-10);
}

TEST_CASE("case (d) data has null, integrable planes at both poles") {
  const auto d = at({1.2, 0.8 * kI, -1.7 * kI, 0.4, 0.7, 0.4}, Signature::Split);
  REQUIRE(classify_poles(d.rc, Signature::Split).pole_case == PoleCase::D);
  for (const auto& p : d.rc.poles) {
    const Jet eta = pole_trajectory(d.built, p.zeta, p.order);
    const NullCheck c = null_direction_check(d.sample.triple, d.sample.frame, eta);
    CHECK(c.null_defect <= 1e-7);
    CHECK(c.frobenius <= 1e-7);
  }
}

TEST_CASE("null check contract and sensitivity") {
  const auto a = at({1.2, 0.8 * kI, -1.7 * kI, 0.4, -0.3, 0.1}, Signature::Split);
  try {
    null_direction_check(a.sample.triple, a.sample.frame, pole_trajectory(a.built, a.rc.poles[0].zeta));
    FAIL("complex pole accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotARealPole);
  }

  // A fixed z that does not follow a root of G is not integrable.
  const auto d = at({1.2, 0.8 * kI, -1.7 * kI, 0.4, 0.7, 0.4}, Signature::Split);
  CHECK(null_direction_check(d.sample.triple, d.sample.frame, Jet(0.3)).frobenius >= 1e-3);
}

TEST_CASE("simple real poles also give integrable planes") {
  // (a1 - a3)(a2 - a3) > 0 with both z^2 roots positive: four real simple
  // poles. dG restricted to any root curve vanishes, so the restricted
  // Pfaffian closes here as well.
  const auto s = at({1.2, 0.8 * kI, -1.7 * kI, 0.4, 0.7, 0.1}, Signature::Split);
  REQUIRE(s.rc.poles.size() == 4);
  for (const auto& p : s.rc.poles) {
    REQUIRE(is_real_pole(p.zeta));
    const NullCheck c = null_direction_check(s.sample.triple, s.sample.frame, pole_trajectory(s.built, p.zeta));
    CHECK(c.frobenius <= 1e-10);
    CHECK(c.null_defect <= 1e-10);
  }
}
