#include "asdlab/connection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "asdlab/error.hpp"

namespace asdlab {

namespace {

const cplx kI(0.0, 1.0);

// M(p) scaled: [[i p1, -p3 + i p2], [p3 + i p2, -i p1]] * c.
PolyMatrix assemble(const std::array<ZPoly, 3>& p, cplx c) {
  const ZPoly i(kI), s(c);
  PolyMatrix m;
  m[0][0] = s * (i * p[0]);
  m[0][1] = s * (i * p[1] - p[2]);
  m[1][0] = s * (p[2] + i * p[1]);
  m[1][1] = s * (-(i * p[0]));
  return m;
}

Eigen::Matrix2cd poly_matrix_value(const PolyMatrix& m, cplx z) {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = m[a][b].empty() ? cplx(0.0) : m[a][b].eval(z).value();
  return r;
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

// Coefficients of p(c + u) in u.
std::vector<cplx> taylor_shift(std::vector<cplx> p, cplx c) {
  const std::size_t n = p.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) p[j - 1] += c * p[j];
  return p;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

InvariantDecomposition decompose(const PfaffianTriple& triple) {
  InvariantDecomposition d;
  for (int i = 0; i < 3; ++i) {
    const Form& th = triple.theta[i];
    for (int m = 0; m <= kTopMask; ++m) {
      if (th[m].empty()) continue;
      const bool one_form = m == (1 << kDt) || m == (1 << kS1) || m == (1 << kS2) || m == (1 << kS3) ||
                            m == (1 << kDz);
      if (!one_form) throw Error(ErrorCode::InvalidArgument, "Pfaffian form is not a one-form");
    }
    const cplx dz = th.one(kDz).empty() ? cplx(0.0) : th.one(kDz).eval(cplx(0.0)).value();
    if (th.one(kDz).size() > 1 || std::abs(dz - (i == 2 ? 1.0 : 0.0)) > 1e-14)
      throw Error(ErrorCode::InvalidArgument, "Pfaffian triple is not normalized in dz");
    d.v[i] = th.one(kDt);
    for (int j = 0; j < 3; ++j) d.A[i][j] = th.one(kS1 + j);
  }
  return d;
}

std::array<Form, 3> recombine(const InvariantDecomposition& d) {
  std::array<Form, 3> out;
  for (int i = 0; i < 3; ++i) {
    Form f = Form::basis(kDt, d.v[i]);
    for (int j = 0; j < 3; ++j) f += Form::basis(kS1 + j, d.A[i][j]);
    if (i == 2) f += Form::basis(kDz);
    out[i] = f;
  }
  return out;
}

Eigen::Matrix2cd BuiltConnection::B1(cplx z) const {
  return poly_matrix_value(F, z) / G.eval(z).value();
}

Eigen::Matrix2cd BuiltConnection::B2(cplx z) const {
  return poly_matrix_value(Q, z) / G.eval(z).value();
}

double BuiltConnection::flatness_residual(cplx z) const {
  const Jet g = G.eval(z);
  const cplx g0 = g.value();
  const cplx gz = G.dz().eval(z).value();
  Eigen::Matrix2cd b1, b1t, b2, b2z;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Jet f = F[a][b].empty() ? Jet(0.0) : F[a][b].eval(z);
      const Jet ratio = f / g;
      b1(a, b) = ratio.value();
      b1t(a, b) = ratio.derivative_at(1);
      const cplx q = Q[a][b].empty() ? cplx(0.0) : Q[a][b].eval(z).value();
      const cplx qz = Q[a][b].empty() ? cplx(0.0) : Q[a][b].dz().eval(z).value();
      b2(a, b) = q / g0;
      b2z(a, b) = (qz * g0 - q * gz) / (g0 * g0);
    }
  const Eigen::Matrix2cd r = b1t - b2z + b1 * b2 - b2 * b1;
  return r.cwiseAbs().maxCoeff();
}

std::vector<cplx> BuiltConnection::G_values() const { return G.values(); }

BuiltConnection build_connection(const PfaffianTriple& triple, SigmaNormalization normalization) {
  const InvariantDecomposition d = decompose(triple);
  const auto& A = d.A;
  const auto cof = [&](int r, int c) {
    const int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    return A[r1][c1] * A[r2][c2] - A[r1][c2] * A[r2][c1];
  };
  // adj(A)_{ij} = cofactor(j, i).
  std::array<ZPoly, 3> p, q;
  for (int i = 0; i < 3; ++i) {
    p[i] = -cof(2, i);
    ZPoly s;
    for (int j = 0; j < 3; ++j) s += cof(j, i) * d.v[j];
    q[i] = -s;
  }
  BuiltConnection b;
  b.normalization = normalization;
  b.G = A[0][0] * cof(0, 0) + A[0][1] * cof(0, 1) + A[0][2] * cof(0, 2);

  double scale = 0;
  for (const auto& row : A)
    for (const auto& e : row) scale = std::max(scale, e.max_abs_value());
  if (b.G.max_abs_value() <= 1e-12 * scale * scale * scale)
    throw Error(ErrorCode::DiagonalDegeneration, "det A vanishes identically (BGPP family)");

  // Sigma = c M(s) and Sigma = -B1 dz - B2 dt give B1 = -c M(p) / G.
  const cplx c = normalization == SigmaNormalization::Flat ? cplx(-0.5) : cplx(1.0 / std::sqrt(2.0));
  b.F = assemble(p, -c);
  b.Q = assemble(q, -c);
  return b;
}

const char* signature_tag(Signature s) { return s == Signature::Definite ? "definite" : "split"; }

Signature signature_from_tag(const std::string& s) {
  if (s == "definite") return Signature::Definite;
  if (s == "split") return Signature::Split;
  throw Error(ErrorCode::ConfigError, "signature must be 'definite' or 'split'");
}

Eigen::Matrix2cd RationalConnection::eval(cplx z) const {
  if (!numerator.empty()) {
    Eigen::Matrix2cd n = Eigen::Matrix2cd::Zero();
    for (std::size_t k = numerator.size(); k-- > 0;) n = n * z + numerator[k];
    return n / horner(denominator, z);
  }
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  for (const auto& p : poles) {
    const cplx u = 1.0 / (z - p.zeta);
    cplx pw = u;
    for (const auto& c : p.coeffs) {
      s += c * pw;
      pw *= u;
    }
  }
  return s;
}

int RationalConnection::total_order() const {
  int n = infinity_order;
  for (const auto& p : poles) n += p.order;
  return n;
}

double RationalConnection::max_trace() const {
  double m = 0;
  for (const auto& p : poles)
    for (const auto& c : p.coeffs) m = std::max(m, std::abs(c.trace()));
  for (const auto& c : numerator) m = std::max(m, std::abs(c.trace()));
  return m;
}

double merge_threshold(const std::vector<cplx>& points) {
  double m = 0;
  for (cplx p : points) m = std::max(m, std::abs(p));
  return kMergeTol * (1.0 + m);
}

bool is_real_pole(cplx zeta) { return std::abs(zeta.imag()) <= kRealTol * (1.0 + std::abs(zeta)); }

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  double big = 0;
  for (cplx c : coeffs) big = std::max(big, std::abs(c));
  if (big == 0) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no roots");
  std::size_t n = coeffs.size() - 1;
  while (n > 0 && std::abs(coeffs[n]) <= 1e-12 * big) --n;
  if (n == 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) C(k, k - 1) = 1.0;
  for (std::size_t k = 0; k < n; ++k) C(k, n - 1) = -coeffs[k] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  const std::vector<cplx> p(coeffs.begin(), coeffs.begin() + n + 1);
  std::vector<cplx> dp(n);
  for (std::size_t k = 1; k <= n; ++k) dp[k - 1] = p[k] * double(k);
  std::vector<cplx> roots;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    cplx r = es.eigenvalues()[k];
    const cplx d = horner(dp, r);
    if (d != cplx(0.0)) {
      const cplx cand = r - horner(p, r) / d;
      if (std::abs(horner(p, cand)) < std::abs(horner(p, r))) r = cand;
    }
    roots.push_back(r);
  }
  return roots;
}

std::vector<RootCluster> merge_roots(const std::vector<cplx>& roots) {
  const double tol = merge_threshold(roots);
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(i)] = find(j);
  std::vector<RootCluster> out;
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(rep.begin(), rep.end(), r);
    if (it == rep.end()) {
      rep.push_back(r);
      out.push_back({roots[i], 1, 0.0});
    } else {
      auto& c = out[it - rep.begin()];
      c.center += roots[i];
      ++c.multiplicity;
    }
  }
  for (auto& c : out) c.center /= double(c.multiplicity);
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = out[std::find(rep.begin(), rep.end(), find(i)) - rep.begin()];
    c.spread = std::max(c.spread, std::abs(roots[i] - c.center));
  }
  return out;
}

RationalConnection rational_connection(const BuiltConnection& built, Signature signature) {
  RationalConnection rc;
  rc.signature = signature;
  const std::vector<cplx> g = built.G_values();
  rc.denominator = g;
  std::size_t fdeg = 0;
  for (const auto& row : built.F)
    for (const auto& e : row) fdeg = std::max(fdeg, e.size());
  rc.numerator.assign(fdeg, Eigen::Matrix2cd::Zero());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const auto v = built.F[a][b].values();
      for (std::size_t k = 0; k < v.size(); ++k) rc.numerator[k](a, b) = v[k];
    }

  const std::vector<cplx> roots = polynomial_roots(g);
  rc.infinity_order = std::max(0, 4 - static_cast<int>(roots.size()));
  const std::vector<RootCluster> clusters = merge_roots(roots);
  const cplx lc = g[roots.size()];

  for (const auto& c : clusters) rc.max_cluster_spread = std::max(rc.max_cluster_spread, c.spread);
  rc.min_cluster_separation = clusters.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j)
      rc.min_cluster_separation =
          std::min(rc.min_cluster_separation, std::abs(clusters[i].center - clusters[j].center));

  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    const auto& c = clusters[ci];
    std::vector<cplx> h{lc};
    for (std::size_t cj = 0; cj < clusters.size(); ++cj) {
      if (cj == ci) continue;
      for (int k = 0; k < clusters[cj].multiplicity; ++k) h = poly_mul(h, {-clusters[cj].center, 1.0});
    }
    const std::vector<cplx> hs = taylor_shift(h, c.center);
    Pole pole;
    pole.zeta = c.center;
    pole.order = c.multiplicity;
    pole.coeffs.assign(c.multiplicity, Eigen::Matrix2cd::Zero());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        std::vector<cplx> f(std::max<std::size_t>(rc.numerator.size(), 1), 0.0);
        for (std::size_t k = 0; k < rc.numerator.size(); ++k) f[k] = rc.numerator[k](a, b);
        const std::vector<cplx> fs = taylor_shift(f, c.center);
        std::vector<cplx> d(c.multiplicity, 0.0);
        for (int k = 0; k < c.multiplicity; ++k) {
          cplx s = k < static_cast<int>(fs.size()) ? fs[k] : cplx(0.0);
          for (int j = 1; j <= k; ++j)
            if (j < static_cast<int>(hs.size())) s -= hs[j] * d[k - j];
          d[k] = s / hs[0];
        }
        // d_k multiplies (z - zeta)^(k - m).
        for (int k = 0; k < c.multiplicity; ++k) pole.coeffs[c.multiplicity - 1 - k](a, b) = d[k];
      }
    rc.poles.push_back(pole);
  }
  return rc;
}

}  // namespace asdlab
