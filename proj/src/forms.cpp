#include "asdlab/forms.hpp"

#include <algorithm>
#include <bit>

namespace asdlab {

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Jet> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZPoly ZPoly::dz() const {
  if (c_.size() <= 1) return {};
  std::vector<Jet> r(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * double(k);
  return ZPoly(std::move(r));
}

ZPoly ZPoly::dt() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = x.derivative();
  return r;
}

Jet ZPoly::eval(const Jet& z) const {
  Jet s(0.0);
  for (std::size_t k = c_.size(); k-- > 0;) s = s * z + c_[k];
  return s;
}

std::vector<std::complex<double>> ZPoly::values() const {
  std::vector<std::complex<double>> v(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k].value();
  return v;
}

double ZPoly::max_abs_value() const {
  double m = 0;
  for (const auto& j : c_) m = std::max(m, std::abs(j.value()));
  return m;
}

Form Form::basis(int b, const ZPoly& coeff) {
  Form f;
  f.c_[1 << b] = coeff;
  return f;
}

Form& Form::operator+=(const Form& o) {
  for (int m = 0; m <= kTopMask; ++m)
    if (!o.c_[m].empty()) c_[m] += o.c_[m];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  for (int m = 0; m <= kTopMask; ++m)
    if (!o.c_[m].empty()) c_[m] -= o.c_[m];
  return *this;
}

Form operator*(const ZPoly& f, const Form& a) {
  Form r;
  for (int m = 0; m <= kTopMask; ++m)
    if (!a.c_[m].empty()) r.c_[m] = f * a.c_[m];
  return r;
}

Form Form::operator-() const {
  Form r;
  for (int m = 0; m <= kTopMask; ++m)
    if (!c_[m].empty()) r.c_[m] = -c_[m];
  return r;
}

int wedge_sign(int a, int b) {
  // Count pairs (i in a, j in b) with i > j.
  int inv = 0;
  for (int j = 0; j < kBasisCount; ++j)
    if (b & (1 << j)) inv += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  return (inv & 1) ? -1 : 1;
}

Form wedge(const Form& a, const Form& b) {
  Form r;
  for (int ma = 0; ma <= kTopMask; ++ma) {
    if (a[ma].empty()) continue;
    for (int mb = 0; mb <= kTopMask; ++mb) {
      if (b[mb].empty() || (ma & mb)) continue;
      const ZPoly p = a[ma] * b[mb];
      if (wedge_sign(ma, mb) > 0)
        r[ma | mb] += p;
      else
        r[ma | mb] -= p;
    }
  }
  return r;
}

namespace {

// d of a single sigma_i as a two-form with constant coefficients (jets for xi).
Form d_sigma(int i, const Structure& s) {
  const int j = i % 3 + 1, k = (i + 1) % 3 + 1;  // cyclic successors, 1-based
  Form r = wedge(Form::basis(j), Form::basis(k));
  // (Xi dt ^ sigma)_i: row i of Xi. Row 1: (0, xi3, -xi2), row 2: (-xi3, 0, xi1),
  // row 3: (xi2, -xi1, 0); i.e. xi_k along sigma_j and -xi_j along sigma_k.
  r += wedge(Form::basis(kDt, ZPoly(s.xi[k - 1])), Form::basis(j));
  r -= wedge(Form::basis(kDt, ZPoly(s.xi[j - 1])), Form::basis(k));
  return r;
}

Form monomial(int mask) {
  Form f;
  f[mask] = ZPoly(1.0);
  return f;
}

Form d_monomial(int mask, const Structure& s) {
  Form r;
  int pos = 0;
  for (int b = 0; b < kBasisCount; ++b) {
    if (!(mask & (1 << b))) continue;
    if (b >= kS1 && b <= kS3) {
      const int left = mask & ((1 << b) - 1);
      const int right = mask & ~((1 << (b + 1)) - 1);
      Form term = wedge(wedge(monomial(left), d_sigma(b, s)), monomial(right));
      if (pos & 1) term = -term;
      r += term;
    }
    ++pos;
  }
  return r;
}

}  // namespace

Form exterior_derivative(const Form& f, const Structure& s) {
  Form r;
  for (int m = 0; m <= kTopMask; ++m) {
    if (f[m].empty()) continue;
    const Form dc = Form::basis(kDt, f[m].dt()) + Form::basis(kDz, f[m].dz());
    r += wedge(dc, monomial(m));
    if (m & 0b1110) r += f[m] * d_monomial(m, s);
  }
  return r;
}

}  // namespace asdlab
