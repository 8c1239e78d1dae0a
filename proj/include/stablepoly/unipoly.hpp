#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stablepoly {

using Complex = std::complex<double>;

// Dense univariate polynomial over an arbitrary scalar ring, coefficients
// stored in ascending degree order with the leading coefficient non-zero
// (the zero polynomial is the empty vector, degree -1).
template <class Scalar>
class Poly1 {
 public:
  Poly1() = default;

  explicit Poly1(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  Poly1(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Poly1 constant(Scalar v) { return Poly1(std::vector<Scalar>{std::move(v)}); }

  static Poly1 variable() { return Poly1(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

  static Poly1 monomial(Scalar v, int degree) {
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1, Scalar(0));
    c.back() = std::move(v);
    return Poly1(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }

  Scalar coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)]
                                                       : Scalar(0);
  }

  const std::vector<Scalar>& coeffs() const { return c_; }

  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  Poly1 operator-() const {
    Poly1 r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Poly1 operator+(const Poly1& p, const Poly1& q) {
    std::vector<Scalar> c(std::max(p.c_.size(), q.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return Poly1(std::move(c));
  }

  friend Poly1 operator-(const Poly1& p, const Poly1& q) { return p + (-q); }

  friend Poly1 operator*(const Poly1& p, const Poly1& q) {
    if (p.isZero() || q.isZero()) return Poly1();
    std::vector<Scalar> c(p.c_.size() + q.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    return Poly1(std::move(c));
  }

  friend Poly1 operator*(const Scalar& a, const Poly1& p) {
    Poly1 r = p;
    for (auto& v : r.c_) v = a * v;
    r.trim();
    return r;
  }

  friend Poly1 operator*(const Poly1& p, const Scalar& a) { return a * p; }

  Poly1& operator+=(const Poly1& q) { return *this = *this + q; }
  Poly1& operator-=(const Poly1& q) { return *this = *this - q; }
  Poly1& operator*=(const Poly1& q) { return *this = *this * q; }

  bool operator==(const Poly1& q) const { return c_ == q.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using UniPoly = Poly1<Complex>;

template <class Scalar>
Scalar evalAt(const Poly1<Scalar>& p, const Scalar& x) {
  Scalar acc(0);
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

template <class Scalar>
Poly1<Scalar> derivative(const Poly1<Scalar>& p) {
  if (p.degree() < 1) return Poly1<Scalar>();
  std::vector<Scalar> c(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k)
    c[static_cast<std::size_t>(k - 1)] = Scalar(k) * p.coeff(k);
  return Poly1<Scalar>(std::move(c));
}

// Coefficient reversal x^k -> x^(n-k); an involution when p(0) != 0.
template <class Scalar>
Poly1<Scalar> reversed(const Poly1<Scalar>& p) {
  std::vector<Scalar> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Poly1<Scalar>(std::move(c));
}

inline UniPoly fromRoots(const std::vector<Complex>& roots, Complex lead = Complex(1.0)) {
  UniPoly p = UniPoly::constant(lead);
  for (const Complex& r : roots) p *= UniPoly({-r, Complex(1.0)});
  return p;
}

inline UniPoly fromRealCoeffs(const std::vector<double>& coeffs) {
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  return UniPoly(std::move(c));
}

inline double maxAbsCoeff(const UniPoly& p) {
  double m = 0.0;
  for (const Complex& v : p.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

// Drops coefficients below relTol * max|coeff| (relative noise floor).
inline UniPoly pruned(const UniPoly& p, double relTol) {
  double floor = relTol * maxAbsCoeff(p);
  std::vector<Complex> c = p.coeffs();
  for (Complex& v : c)
    if (std::abs(v) < floor) v = Complex(0.0);
  return UniPoly(std::move(c));
}

inline bool isRealPoly(const UniPoly& p, double relTol = 1e-12) {
  double floor = relTol * std::max(1e-300, maxAbsCoeff(p));
  for (const Complex& v : p.coeffs())
    if (std::abs(v.imag()) > floor) return false;
  return true;
}

}  // namespace stablepoly
