#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stablepoly/unipoly.hpp"

namespace stablepoly {

using ExpVec = std::vector<int>;

// Sparse multivariate polynomial over complex double coefficients.
//
// Terms are a map from exponent vectors (length nvars, non-negative entries)
// to non-zero coefficients. Variables are indexed 0..nvars-1 internally; the
// names x1..xd exist only in the text format. The map ordering makes
// iteration, formatting and serialization deterministic.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Complex>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, Complex c);
  static MultiPoly variable(int nvars, int j);
  static MultiPoly monomial(int nvars, ExpVec exp, Complex c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int totalDegree() const;
  int degreeIn(int j) const;

  Complex coefficient(const ExpVec& exp) const;
  double maxAbsCoeff() const;
  bool isRealCoeff(double relTol = 1e-12) const;

  // Accumulates c into the term at exp, erasing exact-zero results.
  void addTerm(const ExpVec& exp, Complex c);

  // Same polynomial viewed with extra (unused) trailing variables.
  MultiPoly withNvars(int d) const;

  // Canonical noise cleanup: drops coefficients below relTol * max|coeff|.
  MultiPoly pruned(double relTol) const;
  MultiPoly prunedAbs(double absFloor) const;

  bool operator==(const MultiPoly& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }

 private:
  int nvars_ = 0;
  TermMap terms_;
};

// Arithmetic requires equal nvars (pad with withNvars first); results are
// pruned at 1e-14 relative to the operands' coefficient scale.
MultiPoly operator+(const MultiPoly& f, const MultiPoly& g);
MultiPoly operator-(const MultiPoly& f, const MultiPoly& g);
MultiPoly operator-(const MultiPoly& f);
MultiPoly operator*(const MultiPoly& f, const MultiPoly& g);
MultiPoly operator*(Complex a, const MultiPoly& f);
inline MultiPoly operator*(const MultiPoly& f, Complex a) { return a * f; }

// Pads both arguments to a common variable count.
std::pair<MultiPoly, MultiPoly> alignNvars(const MultiPoly& f, const MultiPoly& g);

Complex evalAt(const MultiPoly& f, const std::vector<Complex>& point);

MultiPoly partialDerivative(const MultiPoly& f, int j);

// Coefficient f_k of x_j^k, as a polynomial in the remaining nvars-1 variables.
MultiPoly coefficientSlice(const MultiPoly& f, int j, int k);

// sum_i f_i x_j^(n-i) with n = degreeIn(j).
MultiPoly reverseInVar(const MultiPoly& f, int j);

// (even, odd) split by total-degree parity; the parts sum exactly to f.
std::pair<MultiPoly, MultiPoly> evenOddParts(const MultiPoly& f);

// Sum of the terms of maximal total degree; rejects the zero polynomial.
MultiPoly topHomogeneous(const MultiPoly& f);

// UpperToStable substitutes x_j -> i x_j, StableToUpper x_j -> -i x_j.
// The two are mutually inverse, exactly (pure phase rotations).
enum class Rotation { StableToUpper, UpperToStable };
MultiPoly rotateHalfplane(const MultiPoly& f, Rotation direction);

// t |-> f(base + t dir); dir is real with at least one non-zero entry.
UniPoly restrictLine(const MultiPoly& f, const std::vector<Complex>& base,
                     const std::vector<double>& dir);

// Univariate restriction fixing every variable except x_j at values[k];
// values[j] is ignored.
UniPoly restrictToVariable(const MultiPoly& f, int j, const std::vector<Complex>& values);

// Per-variable substitution rule. Scale requires a > 0 and Shift requires
// Re(sigma) > 0 (the ranges for which these moves preserve stability);
// FixValue accepts any value. RenameTo merges this slot into a kept one,
// SplitSum maps x_j -> x_j + x_fresh with the fresh variable appended.
struct VarRule {
  enum class Kind { Keep, Scale, Shift, FixValue, FixImag, RenameTo, SplitSum };
  Kind kind = Kind::Keep;
  double factor = 1.0;   // Scale
  Complex value{};       // Shift / FixValue sigma; FixImag stores i*a
  int target = -1;       // RenameTo

  static VarRule keep() { return {}; }
  static VarRule scale(double a) { return {Kind::Scale, a, {}, -1}; }
  static VarRule shift(Complex sigma) { return {Kind::Shift, 1.0, sigma, -1}; }
  static VarRule fixAt(Complex sigma) { return {Kind::FixValue, 1.0, sigma, -1}; }
  static VarRule fixAtImaginary(double a) { return {Kind::FixImag, 1.0, Complex(0.0, a), -1}; }
  static VarRule renameTo(int j) { return {Kind::RenameTo, 1.0, {}, j}; }
  static VarRule splitSum() { return {Kind::SplitSum, 1.0, {}, -1}; }
};

struct AffineSubstitution {
  std::vector<VarRule> rules;  // one per input variable
};

// Applies the rule set; fixed and renamed-away slots are eliminated from the
// output, SplitSum slots append fresh variables, so the output dimension is
// nvars - #eliminated + #splits.
MultiPoly affineSubstitute(const MultiPoly& f, const AffineSubstitution& sub);

// Conversions between the univariate and multivariate representations.
UniPoly toUniPoly(const MultiPoly& f);  // requires nvars <= 1
MultiPoly toMultiPoly(const UniPoly& p, int nvars = 1, int j = 0);

}  // namespace stablepoly
