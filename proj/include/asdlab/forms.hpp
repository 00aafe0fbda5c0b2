#pragma once

#include <array>
#include <complex>
#include <vector>

#include "asdlab/jet.hpp"

namespace asdlab {

// Polynomial in z whose coefficients are t-jets about a fixed sample time.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(const Jet& c) : c_{c} {}  // NOLINT
  ZPoly(std::complex<double> c) : c_{Jet(c)} {}  // NOLINT
  ZPoly(double c) : c_{Jet(c)} {}  // NOLINT
  explicit ZPoly(std::vector<Jet> coeffs) : c_(std::move(coeffs)) {}
  static ZPoly z() { return ZPoly(std::vector<Jet>{Jet(0.0), Jet(1.0)}); }

  bool empty() const { return c_.empty(); }
  // Number of stored coefficients (degree + 1, possibly with zero leading terms).
  std::size_t size() const { return c_.size(); }
  const Jet& operator[](std::size_t k) const { return c_[k]; }
  Jet& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Jet>& coeffs() const { return c_; }

  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly operator-() const;

  ZPoly dz() const;
  ZPoly dt() const;
  Jet eval(const Jet& z) const;
  Jet eval(std::complex<double> z) const { return eval(Jet(z)); }
  // Value at the sample time, i.e. the constant terms of the jets.
  std::vector<std::complex<double>> values() const;
  double max_abs_value() const;

 private:
  std::vector<Jet> c_;
};

// Basis one-forms for the masks below.
enum Basis : int { kDt = 0, kS1 = 1, kS2 = 2, kS3 = 3, kDz = 4 };
constexpr int kBasisCount = 5;
constexpr int kTopMask = (1 << kBasisCount) - 1;

// Differential form on (t, SU(2), z), stored by monomial mask over
// {dt, sigma1, sigma2, sigma3, dz} in increasing index order.
class Form {
 public:
  Form() = default;
  static Form basis(int b, const ZPoly& coeff = ZPoly(1.0));

  ZPoly& operator[](int mask) { return c_[mask]; }
  const ZPoly& operator[](int mask) const { return c_[mask]; }
  // Coefficient of the one-form basis element b.
  const ZPoly& one(int b) const { return c_[1 << b]; }

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const ZPoly& f, const Form& a);
  Form operator-() const;

 private:
  std::array<ZPoly, 1 << kBasisCount> c_{};
};

Form wedge(const Form& a, const Form& b);
// Sign of moving the monomial `a` past the disjoint monomial `b` into order.
int wedge_sign(int a, int b);

// Structure relations for the invariant coframe:
// d sigma_i = sigma_j ^ sigma_k + (Xi dt ^ sigma)_i with
// Xi = [[0, xi3, -xi2], [-xi3, 0, xi1], [xi2, -xi1, 0]] (zero for the plain
// left-invariant frame).
struct Structure {
  std::array<Jet, 3> xi{};
};

Form exterior_derivative(const Form& f, const Structure& s = {});

}  // namespace asdlab
