#include "asdlab/pfaffian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

const cplx kI(0.0, 1.0);

double max_abs_at(const Form& f, cplx z) {
  double m = 0;
  for (int mask = 0; mask <= kTopMask; ++mask)
    if (!f[mask].empty()) m = std::max(m, std::abs(f[mask].eval(z).value()));
  return m;
}

}  // namespace

VectorField FlowModel::field() const {
  const FlowModel self = *this;
  if (!nondiagonal) {
    return [self](double, const CVec& y, CVec& dy) {
      const auto d = diagonal_flow(std::array<cplx, 6>{y[0], y[1], y[2], y[3], y[4], y[5]});
      std::copy(d.begin(), d.end(), dy.begin());
      dy[3] += self.alpha1_shift;
    };
  }
  const VectorField base = nondiagonal_field(xi_form);
  return [self, base](double t, const CVec& y, CVec& dy) {
    base(t, y, dy);
    dy[3] += self.alpha1_shift;
  };
}

std::array<Jet, 9> FlowModel::jets(const CVec& state) const {
  std::array<Jet, 9> out;
  if (!nondiagonal) {
    if (state.size() < 6) throw Error(ErrorCode::InvalidArgument, "diagonal state needs 6 entries");
    std::array<cplx, 6> y0;
    std::copy(state.begin(), state.begin() + 6, y0.begin());
    const cplx shift = alpha1_shift;
    const auto y = picard_jets(y0, [shift](const std::array<Jet, 6>& v) {
      auto d = diagonal_flow(v);
      d[3] += Jet(shift);
      return d;
    });
    std::copy(y.begin(), y.end(), out.begin());
    for (int i = 6; i < 9; ++i) out[i] = Jet(0.0);
    return out;
  }
  if (state.size() < 9) throw Error(ErrorCode::InvalidArgument, "non-diagonal state needs 9 entries");
  std::array<cplx, 9> y0;
  std::copy(state.begin(), state.begin() + 9, y0.begin());
  const XiEquations form = xi_form;
  const cplx shift = alpha1_shift;
  return picard_jets(y0, [form, shift](const std::array<Jet, 9>& v) {
    auto d = nondiagonal_flow(v, form);
    d[3] += Jet(shift);
    return d;
  });
}

Coframe coframe_from_jets(const std::array<Jet, 9>& y) {
  const Jet &w1 = y[0], &w2 = y[1], &w3 = y[2];
  Coframe f;
  const Jet a = sqrt(w2 * w3 / w1);
  const Jet b = w3 / a, c = w2 / a;
  f.scale = {a * b * c, a, b, c};
  f.e[0] = Form::basis(kDt, ZPoly(f.scale[0]));
  for (int i = 1; i < 4; ++i) f.e[i] = Form::basis(i, ZPoly(f.scale[i]));
  f.structure.xi = {y[6], y[7], y[8]};
  return f;
}

ConnectionForms levi_civita(const Coframe& frame) {
  // de^i = -sum_{p<q} c^i_pq e^p ^ e^q. For this coframe basis index = frame index.
  std::array<std::array<std::array<Jet, 4>, 4>, 4> c{};
  for (int i = 0; i < 4; ++i) {
    const Form de = exterior_derivative(frame.e[i], frame.structure);
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const ZPoly& v = de[(1 << p) | (1 << q)];
        if (v.empty()) continue;
        const Jet cij = -v[0] / (frame.scale[p] * frame.scale[q]);
        c[i][p][q] = cij;
        c[i][q][p] = -cij;
      }
  }
  ConnectionForms conn;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Form w;
      for (int k = 0; k < 4; ++k) {
        const Jet g = 0.5 * (c[k][i][j] - c[i][j][k] - c[j][k][i]);
        w += ZPoly(g) * frame.e[k];
      }
      conn.omega[i][j] = w;
    }
  return conn;
}

double structure_residual(const Coframe& frame, const ConnectionForms& conn) {
  double r = 0;
  for (int i = 0; i < 4; ++i) {
    Form s = exterior_derivative(frame.e[i], frame.structure);
    for (int j = 0; j < 4; ++j) s += wedge(conn.omega[i][j], frame.e[j]);
    r = std::max(r, max_abs_at(s, 0.0));
  }
  return r;
}

const char* theta3_name(Theta3Reading r) {
  switch (r) {
    case Theta3Reading::Consistent: return "consistent";
    case Theta3Reading::PrintedSymmetric: return "printed-symmetric";
    case Theta3Reading::PrintedVerbatim: return "printed-verbatim";
  }
  return "?";
}

PfaffianTriple pfaffian_forms(const Coframe& frame, const ConnectionForms& conn, Theta3Reading reading) {
  const auto& w = conn.omega;
  double antisym = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) antisym = std::max(antisym, max_abs_at(w[i][j] + w[j][i], 0.0));
  if (antisym > 1e-10)
    throw Error(ErrorCode::StructureEquationViolated, "connection forms are not antisymmetric");
  if (structure_residual(frame, conn) > 1e-10)
    throw Error(ErrorCode::StructureEquationViolated, "first structure equation fails");

  const auto& e = frame.e;
  const ZPoly z = ZPoly::z();
  const ZPoly i(kI);
  PfaffianTriple t;
  t.structure = frame.structure;
  t.theta[0] = z * (e[1] + i * e[2]) - (e[0] + i * e[3]);
  t.theta[1] = z * (e[0] - i * e[3]) + (e[1] - i * e[2]);

  const Form X = w[0][1] - w[2][3], Y = w[0][2] - w[3][1], Z = w[0][3] - w[1][2];
  const ZPoly half(0.5), z2h = ZPoly(0.5) * z * z;
  Form t3 = Form::basis(kDz);
  switch (reading) {
    case Theta3Reading::Consistent:
      t3 += z2h * (X + i * Y) - (i * z) * Z + half * (X - i * Y);
      break;
    case Theta3Reading::PrintedSymmetric:
      t3 += z2h * (Z + i * X) - (i * z) * Y + half * (Z - i * X);
      break;
    case Theta3Reading::PrintedVerbatim:
      t3 += z2h * (Z + i * X) - (i * z) * Y + half * (w[0][1] - w[1][2] - i * X);
      break;
  }
  t.theta[2] = t3;
  return t;
}

cplx coefficient_at(const Form& f, int mask, cplx z) {
  return f[mask].empty() ? cplx(0.0) : f[mask].eval(z).value();
}

double asd_residual(const PfaffianTriple& triple, const std::vector<cplx>& zs) {
  const Form t123 = wedge(wedge(triple.theta[0], triple.theta[1]), triple.theta[2]);
  std::array<Form, 3> k;
  for (int i = 0; i < 3; ++i) k[i] = wedge(exterior_derivative(triple.theta[i], triple.structure), t123);
  double worst = 0;
  for (cplx z : zs) {
    double norm = 0;
    for (int m = 0; m <= kTopMask; ++m)
      if (std::popcount(static_cast<unsigned>(m)) == 3) norm = std::max(norm, std::abs(coefficient_at(t123, m, z)));
    const double scale = max_abs_at(triple.theta[0], z) * max_abs_at(triple.theta[1], z) *
                         max_abs_at(triple.theta[2], z);
    if (!(norm > 1e-12 * scale)) throw Error(ErrorCode::DegenerateTriple, "Pfaffian forms are dependent");
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(coefficient_at(k[i], kTopMask, z)) / norm);
  }
  return worst;
}

TwistorSample twistor_sample(const FlowModel& model, double t, const CVec& state, Theta3Reading reading) {
  TwistorSample s;
  s.t = t;
  s.frame = coframe_from_jets(model.jets(state));
  s.omega = levi_civita(s.frame);
  s.triple = pfaffian_forms(s.frame, s.omega, reading);
  return s;
}

}  // namespace asdlab
