#include "asdlab/painleve.hpp"

#include <cmath>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

bool near(cplx a, cplx b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)); }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::SingularPoint, what);
}

}  // namespace

const char* kind_name(PainleveKind kind) {
  switch (kind) {
    case PainleveKind::I: return "I";
    case PainleveKind::II: return "II";
    case PainleveKind::III: return "III";
    case PainleveKind::IV: return "IV";
    case PainleveKind::V: return "V";
    case PainleveKind::VI: return "VI";
  }
  return "?";
}

PainleveKind kind_from_name(const std::string& name) {
  for (auto k : {PainleveKind::I, PainleveKind::II, PainleveKind::III, PainleveKind::IV,
                 PainleveKind::V, PainleveKind::VI})
    if (name == kind_name(k)) return k;
  throw Error(ErrorCode::ConfigError, "unknown Painleve kind '" + name + "'");
}

int parameter_arity(PainleveKind kind) {
  switch (kind) {
    case PainleveKind::I: return 0;
    case PainleveKind::II: return 1;
    case PainleveKind::IV: return 2;
    default: return 4;
  }
}

cplx PainleveParams::slot(int i) const {
  switch (i) {
    case 0: return alpha;
    case 1: return beta;
    case 2: return gamma;
    default: return delta;
  }
}

void PainleveParams::validate() const {
  for (int i = parameter_arity(kind); i < 4; ++i)
    if (slot(i) != cplx(0))
      throw Error(ErrorCode::InvalidArgument,
                  std::string("parameter slot beyond arity is non-zero for kind ") + kind_name(kind));
}

PainleveParams PainleveParams::make(PainleveKind kind, std::vector<cplx> values) {
  if (static_cast<int>(values.size()) != parameter_arity(kind))
    throw Error(ErrorCode::InvalidArgument,
                std::string("wrong number of parameters for kind ") + kind_name(kind));
  values.resize(4, 0.0);
  PainleveParams p;
  p.kind = kind;
  p.alpha = values[0];
  p.beta = values[1];
  p.gamma = values[2];
  p.delta = values[3];
  return p;
}

cplx rhs(const PainleveParams& pp, const PainlevePoint& p) {
  const cplx x = p.x, q = p.q, qp = p.qp;
  const cplx a = pp.alpha, b = pp.beta, g = pp.gamma, d = pp.delta;
  switch (pp.kind) {
    case PainleveKind::I:
      return 6.0 * q * q + x;
    case PainleveKind::II:
      return 2.0 * q * q * q + x * q + a;
    case PainleveKind::III:
      require(!near(x, 0.0), "PIII requires x != 0");
      require(!near(q, 0.0), "PIII requires q != 0");
      return qp * qp / q - qp / x + (a * q * q + b) / x + g * q * q * q + d / q;
    case PainleveKind::IV:
      require(!near(q, 0.0), "PIV requires q != 0");
      return qp * qp / (2.0 * q) + 1.5 * q * q * q + 4.0 * x * q * q + 2.0 * (x * x - a) * q + b / q;
    case PainleveKind::V:
      require(!near(x, 0.0), "PV requires x != 0");
      require(!near(q, 0.0) && !near(q, 1.0), "PV requires q not in {0, 1}");
      return (1.0 / (2.0 * q) + 1.0 / (q - 1.0)) * qp * qp - qp / x +
             (q - 1.0) * (q - 1.0) / (x * x) * (a * q + b / q) + g * q / x +
             d * q * (q + 1.0) / (q - 1.0);
    case PainleveKind::VI: {
      require(!near(x, 0.0) && !near(x, 1.0), "PVI requires x not in {0, 1}");
      require(!near(q, 0.0) && !near(q, 1.0) && !near(q, x), "PVI requires q not in {0, 1, x}");
      const cplx first = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - x)) * qp * qp;
      const cplx second = (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (q - x)) * qp;
      const cplx pref = q * (q - 1.0) * (q - x) / (x * x * (x - 1.0) * (x - 1.0));
      const cplx brace = a + b * x / (q * q) + g * (x - 1.0) / ((q - 1.0) * (q - 1.0)) +
                         d * x * (x - 1.0) / ((q - x) * (q - x));
      return first - second + pref * brace;
    }
  }
  return 0.0;
}

VectorField as_first_order(const PainleveParams& params, cplx x0, cplx dir) {
  params.validate();
  return [params, x0, dir](double s, const CVec& y, CVec& dy) {
    const cplx x = x0 + dir * s;
    dy[0] = dir * y[1];
    dy[1] = dir * rhs(params, {x, y[0], y[1]});
  };
}

double normalized_residual(const std::vector<std::pair<cplx, cplx>>& qpp_rhs) {
  double r = 0;
  for (const auto& [qpp, f] : qpp_rhs) r = std::max(r, std::abs(qpp - f) / (1.0 + std::abs(qpp)));
  return r;
}

double residual(const PainleveParams& params, const std::vector<PainleveSample>& samples) {
  params.validate();
  std::vector<std::pair<cplx, cplx>> pairs;
  pairs.reserve(samples.size());
  for (const auto& s : samples) pairs.emplace_back(s.qpp, rhs(params, {s.x, s.q, s.qp}));
  return normalized_residual(pairs);
}

SingularitySet fixed_singularities(PainleveKind kind) {
  SingularitySet s;
  switch (kind) {
    case PainleveKind::VI: s.finite = {0.0, 1.0}; break;
    case PainleveKind::V:
    case PainleveKind::III: s.finite = {0.0}; break;
    default: break;
  }
  return s;
}

}  // namespace asdlab
