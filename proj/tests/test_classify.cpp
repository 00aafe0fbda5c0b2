#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asdlab/classify.hpp"
#include "asdlab/error.hpp"

using namespace asdlab;
using M2 = Eigen::Matrix2cd;

namespace {

const cplx kI(0.0, 1.0);

M2 mat(cplx a, cplx b, cplx c, cplx d) {
  M2 m;
  m << a, b, c, d;
  return m;
}
M2 diag(cplx a) { return mat(a, 0, 0, -a); }
const M2 kNil = mat(0, 1, 0, 0);

RationalConnection make(Signature s, std::vector<Pole> poles) {
  RationalConnection rc;
  rc.signature = s;
  rc.poles = std::move(poles);
  return rc;
}

Pole pole(cplx z, std::vector<M2> coeffs) {
  return {z, static_cast<int>(coeffs.size()), std::move(coeffs)};
}

void check_params(const PainleveParams& p, PainleveKind kind, std::vector<cplx> expect) {
  CHECK(p.kind == kind);
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(p.slot(int(i)) - expect[i]) <= 1e-14);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("exponent formulas") {
  // tr A^2 = 2 a^2 gives theta = 2a.
  CHECK(std::abs(principal_theta(theta_squared_residue(diag(0.35))) - 0.7) < 1e-15);
  CHECK(theta_squared_residue(kNil) == cplx(0.0));
  CHECK(code_of([] { theta_squared_pair(diag(1.0), M2::Zero()); }) == ErrorCode::DegenerateTrace);
  CHECK(code_of([] { theta_squared_pair(diag(1.0), kNil); }) == ErrorCode::DegenerateTrace);
  // Principal branch: Re >= 0, and sqrt(-4) = 2i.
  CHECK(std::abs(principal_theta(-4.0) - 2.0 * kI) < 1e-15);
}

TEST_CASE("split case a") {
  // Poles {i, -i, 1+i, 1-i}; the conjugate pole carries -A^dagger.
  const M2 A0 = diag(0.5), A1 = kNil;
  const auto rc = make(Signature::Split, {pole(kI, {A0}), pole(-kI, {-A0.adjoint()}), pole(1.0 + kI, {A1}),
                                          pole(1.0 - kI, {-A1.adjoint()})});
  const auto c = classify(rc, Signature::Split);
  CHECK(c.config.pole_case == PoleCase::A);
  CHECK(std::abs(c.config.exponent("theta0").value - 1.0) < 1e-15);
  CHECK(std::abs(c.config.exponent("theta1").value) < 1e-15);
  check_params(c.params, PainleveKind::VI, {0.0, 0.5, 0.0, 0.5});
  CHECK(c.interpretation == Interpretation::Generic);
}

TEST_CASE("split case b") {
  const M2 A2 = diag(cplx(0.25, 0.5)), C = diag(kI);
  const auto rc = make(Signature::Split, {pole(0.0, {-A2 + A2.adjoint(), C}), pole(kI, {A2}),
                                          pole(-kI, {-A2.adjoint()})});
  const auto c = classify(rc, Signature::Split);
  CHECK(c.config.pole_case == PoleCase::B);
  // theta0 = 2 * (0.25 + 0.5i); A2 - A2^dagger = diag(i), tr(.. C) = -2, tr C^2 = -2.
  const cplx t0(0.5, 1.0), ti(0.0, 2.0);
  CHECK(std::abs(c.config.exponent("theta0").value - t0) < 1e-15);
  CHECK(std::abs(c.config.exponent("theta_inf").squared + 4.0) < 1e-15);
  CHECK(std::abs(c.config.exponent("theta_inf").value - ti) < 1e-15);
  const cplx s = t0 + std::conj(t0);
  check_params(c.params, PainleveKind::V,
               {0.5 * (s + ti) * (s + ti), -0.5 * (s - ti) * (s - ti), 1.0 - t0 + std::conj(t0), 0.5});
  CHECK(c.interpretation == Interpretation::OneNullSurfaceFamily);
}

TEST_CASE("split case c") {
  const M2 C = diag(kI);
  for (const auto& [A3, theta] : {std::pair<M2, cplx>{diag(cplx(0.3, 0.1)), cplx(0.6, 0.2)}, {kNil, 0.0}}) {
    const cplx z(1.0, 1.0);
    const auto rc = make(Signature::Split, {pole(z, {kI * C, A3}), pole(std::conj(z), {-kI * C, -A3.adjoint()})});
    const auto c = classify(rc, Signature::Split);
    CHECK(c.config.pole_case == PoleCase::C);
    CHECK(std::abs(c.config.exponent("theta").value - theta) < 1e-15);
    check_params(c.params, PainleveKind::III, {4.0 * theta, 4.0 * (1.0 + std::conj(theta)), 4.0, -4.0});
    CHECK(c.interpretation == Interpretation::HermitianStructure);
  }
  // theta = 0 gives (0, 4, 4, -4).
  const auto rc = make(Signature::Split, {pole(kI, {kI * C, kNil}), pole(-kI, {-kI * C, -kNil.adjoint()})});
  check_params(classify(rc, Signature::Split).params, PainleveKind::III, {0.0, 4.0, 4.0, -4.0});
}

TEST_CASE("split case d") {
  const M2 C1 = diag(0.5 * kI), C2 = diag(kI), C3 = mat(0, 0.7, -0.7, 0);
  // Listed out of order to exercise eta0 < eta1.
  const auto rc = make(Signature::Split, {pole(2.0, {-C2, C3}), pole(-1.0, {C2, C1})});
  const auto c = classify(rc, Signature::Split);
  CHECK(c.config.pole_case == PoleCase::D);
  // tr C1 C2 = -1, tr C2^2 = -2: theta1^2 = -1; tr C2 C3 = 0.
  CHECK(std::abs(c.config.exponent("theta1").value - kI) < 1e-15);
  CHECK(std::abs(c.config.exponent("theta2").value) < 1e-15);
  check_params(c.params, PainleveKind::III, {4.0 * kI, 4.0, 4.0, -4.0});
  CHECK(c.interpretation == Interpretation::TwoNullSurfaceFamilies);
}

TEST_CASE("split case e") {
  const M2 C1 = diag(kI), C2 = diag(kI);
  for (const auto& [w, alpha] : {std::pair<double, double>{0.0, 0.5}, {0.25, 0.25}}) {
    const auto rc = make(Signature::Split, {pole(0.5, {M2::Zero(), w * diag(kI), C2, C1})});
    const auto c = classify(rc, Signature::Split);
    CHECK(c.config.pole_case == PoleCase::E);
    check_params(c.params, PainleveKind::II, {alpha});
    CHECK(c.interpretation == Interpretation::OneNullSurfaceFamily);
  }
  const auto rc = make(Signature::Split, {pole(0.5, {M2::Zero(), M2::Zero(), C2, M2::Zero()})});
  CHECK(classify(rc, Signature::Split).params.kind == PainleveKind::I);
}

TEST_CASE("definite cases") {
  // {0.5, -2} and {0.5i, -2i} are antipodal pairs; lexicographic order picks -2, then -2i.
  const auto a = make(Signature::Definite, {pole(0.5, {kNil}), pole(-2.0, {diag(0.5)}), pole(cplx(0, 0.5), {kNil}),
                                            pole(cplx(0, -2), {kNil})});
  const auto ca = classify(a, Signature::Definite);
  CHECK(ca.config.pole_case == PoleCase::A);
  check_params(ca.params, PainleveKind::VI, {0.0, 0.5, 0.0, 0.5});
  CHECK(ca.interpretation == Interpretation::Generic);

  // Double poles at 0.5 + 0.5i and its antipode -1 - i; the latter sorts first.
  const M2 C = diag(kI), A2 = diag(cplx(0.3, 0.1));
  const auto b = make(Signature::Definite, {pole(cplx(0.5, 0.5), {-kI * C, M2::Zero()}),
                                            pole(cplx(-1, -1), {kI * C, A2})});
  const auto cb = classify(b, Signature::Definite);
  CHECK(cb.config.pole_case == PoleCase::B);
  const cplx theta(0.6, 0.2);
  check_params(cb.params, PainleveKind::III, {4.0 * theta, 4.0 * (1.0 + std::conj(theta)), 4.0, -4.0});
  CHECK(cb.interpretation == Interpretation::HermitianStructure);
}

TEST_CASE("interpretation table") {
  const std::vector<std::tuple<Signature, PoleCase, Interpretation>> table{
      {Signature::Split, PoleCase::A, Interpretation::Generic},
      {Signature::Split, PoleCase::B, Interpretation::OneNullSurfaceFamily},
      {Signature::Split, PoleCase::C, Interpretation::HermitianStructure},
      {Signature::Split, PoleCase::D, Interpretation::TwoNullSurfaceFamilies},
      {Signature::Split, PoleCase::E, Interpretation::OneNullSurfaceFamily},
      {Signature::Definite, PoleCase::A, Interpretation::Generic},
      {Signature::Definite, PoleCase::B, Interpretation::HermitianStructure},
  };
  for (const auto& [s, c, i] : table) CHECK(geometric_interpretation(s, c) == i);
  for (PoleCase c : {PoleCase::C, PoleCase::D, PoleCase::E}) CHECK_FALSE(case_allowed(Signature::Definite, c));
  CHECK(case_from_tag("d") == PoleCase::D);
}

TEST_CASE("classification errors") {
  const M2 r = diag(0.5);
  CHECK(code_of([&] {
          classify(make(Signature::Split, {pole(kI, {r}), pole(-kI + 0.1, {r}), pole(1.0 + kI, {r}),
                                           pole(1.0 - kI, {r})}),
                   Signature::Split);
        }) == ErrorCode::RealityViolation);
  CHECK(code_of([&] {
          classify(make(Signature::Definite, {pole(0.0, {r, r}), pole(kI, {r}), pole(-kI, {r})}),
                   Signature::Definite);
        }) == ErrorCode::RealityViolation);
  // Four real simple poles are conjugation-closed but outside (a)-(e).
  CHECK(code_of([&] {
          classify(make(Signature::Split, {pole(-2.0, {r}), pole(-0.5, {r}), pole(0.5, {r}), pole(2.0, {r})}),
                   Signature::Split);
        }) == ErrorCode::UnclassifiableConfiguration);
  CHECK(code_of([&] {
          classify(make(Signature::Split, {pole(kI, {r}), pole(-kI, {r}), pole(0.5, {r})}), Signature::Split);
        }) == ErrorCode::UnclassifiableConfiguration);
  auto inf = make(Signature::Split, {pole(kI, {r}), pole(-kI, {r}), pole(0.5, {r, r})});
  inf.infinity_order = 1;
  CHECK(code_of([&] { classify(inf, Signature::Split); }) == ErrorCode::UnclassifiableConfiguration);
  // Case (c) with C = 0 has no defined exponent.
  CHECK(code_of([&] {
          classify(make(Signature::Split, {pole(kI, {M2::Zero(), r}), pole(-kI, {M2::Zero(), r})}),
                   Signature::Split);
        }) == ErrorCode::DegenerateTrace);
  // Poles within the merge tolerance collapse into one double pole, reaching
  // the case (b) formulas (whose C is zero here).
  const auto near = make(Signature::Split, {pole(0.5, {r}), pole(0.5 + 1e-9, {M2::Zero()}), pole(kI, {r}),
                                            pole(-kI, {-r})});
  CHECK(code_of([&] { classify_poles(near, Signature::Split); }) == ErrorCode::DegenerateTrace);
}

TEST_CASE("built connections classify by alpha") {
  const auto run = [](CVec y, Signature s) {
    const auto b = build_connection(twistor_sample(FlowModel{}, 0.0, y).triple);
    return classify(rational_connection(b, s), s);
  };
  // Definite data with distinct alpha: generic case.
  CHECK(run({0.9, 1.6, 2.4, 0.3, -0.6, 0.9}, Signature::Definite).config.pole_case == PoleCase::A);
  // alpha2 = alpha3: double poles at +-i.
  const auto hb = run({0.9, 1.6, 2.4, 0.3, 0.7, 0.7}, Signature::Definite);
  CHECK(hb.config.pole_case == PoleCase::B);
  CHECK(hb.interpretation == Interpretation::HermitianStructure);

  const cplx i(0, 1);
  // Split data, (a1 - a3)(a2 - a3) < 0: four poles on the unit circle.
  CHECK(run({1.2, 0.8 * i, -1.7 * i, 0.4, -0.3, 0.1}, Signature::Split).config.pole_case == PoleCase::A);
  CHECK(run({1.2, 0.8 * i, -1.7 * i, 0.4, 0.7, 0.7}, Signature::Split).config.pole_case == PoleCase::C);
  const auto d = run({1.2, 0.8 * i, -1.7 * i, 0.4, 0.7, 0.4}, Signature::Split);
  CHECK(d.config.pole_case == PoleCase::D);
  CHECK(d.interpretation == Interpretation::TwoNullSurfaceFamilies);
  CHECK(d.config.margins.max_real_imag <= 1e-8);
}
