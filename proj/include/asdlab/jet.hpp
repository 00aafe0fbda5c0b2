#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace asdlab {

// Truncated Taylor series in tau = t - t0 with complex coefficients. Only the
// first valid() coefficients are meaningful; products and quotients keep the
// smaller validity, differentiation loses one order.
class Jet {
 public:
  static constexpr int kCapacity = 8;
  using cplx = std::complex<double>;

  Jet() = default;
  Jet(cplx c) { c_[0] = c; }  // NOLINT: implicit constants are the common case
  Jet(double c) { c_[0] = c; }  // NOLINT

  // t0 + tau, i.e. the independent variable itself.
  static Jet variable(cplx t0) {
    Jet j(t0);
    j.c_[1] = 1.0;
    return j;
  }
  static Jet with_validity(int n) {
    Jet j;
    j.n_ = n;
    return j;
  }

  int valid() const { return n_; }
  cplx operator[](int k) const { return c_[k]; }
  cplx& coeff(int k) { return c_[k]; }
  cplx value() const { return c_[0]; }
  // k-th derivative at t0.
  cplx derivative_at(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  Jet derivative() const {
    Jet r = with_validity(std::max(0, n_ - 1));
    for (int k = 0; k + 1 < kCapacity; ++k) r.c_[k] = c_[k + 1] * double(k + 1);
    return r;
  }
  // Antiderivative with constant term c0.
  Jet integral(cplx c0) const {
    Jet r = with_validity(std::min(kCapacity, n_ + 1));
    r.c_[0] = c0;
    for (int k = 1; k < kCapacity; ++k) r.c_[k] = c_[k - 1] / double(k);
    return r;
  }
  Jet truncated(int n) const {
    Jet r = *this;
    r.n_ = std::min(n_, n);
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kCapacity; ++k) c_[k] += o.c_[k];
    n_ = std::min(n_, o.n_);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kCapacity; ++k) c_[k] -= o.c_[k];
    n_ = std::min(n_, o.n_);
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r = with_validity(std::min(a.n_, b.n_));
    for (int k = 0; k < r.n_; ++k) {
      cplx s = 0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r = with_validity(std::min(a.n_, b.n_));
    for (int k = 0; k < r.n_; ++k) {
      cplx s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }
  // Principal branch at the constant term.
  friend Jet sqrt(const Jet& a) {
    Jet r = with_validity(a.n_);
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k < r.n_; ++k) {
      cplx s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
      r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
  }
  // Evaluate the truncated series at tau.
  cplx eval(double tau) const {
    cplx s = 0;
    for (int k = n_ - 1; k >= 0; --k) s = s * tau + c_[k];
    return s;
  }

 private:
  std::array<cplx, kCapacity> c_{};
  int n_ = kCapacity;
};

// Taylor jets of the solution of y' = f(y) through y0, by Picard iteration on
// jets. Each sweep fixes one more coefficient; `order` sweeps give order+1
// valid coefficients (capped at the capacity).
template <std::size_t N, class F>
std::array<Jet, N> picard_jets(const std::array<std::complex<double>, N>& y0, F&& f,
                               int order = Jet::kCapacity - 1) {
  std::array<Jet, N> y;
  for (std::size_t i = 0; i < N; ++i) y[i] = Jet(y0[i]).truncated(1);
  for (int sweep = 0; sweep < order; ++sweep) {
    const std::array<Jet, N> dy = f(y);
    for (std::size_t i = 0; i < N; ++i) y[i] = dy[i].integral(y0[i]);
  }
  return y;
}

}  // namespace asdlab
