#include "stablepoly/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stablepoly/errors.hpp"

namespace stablepoly {

namespace {

constexpr double kCanonicalPruneRel = 1e-14;

Complex cpow(Complex base, int e) {
  Complex acc(1.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

void requireSameNvars(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars() != g.nvars())
    throw std::invalid_argument("variable count mismatch: " + std::to_string(f.nvars()) +
                                " vs " + std::to_string(g.nvars()));
}

void requireVarIndex(const MultiPoly& f, int j) {
  if (j < 0 || j >= f.nvars())
    throw std::invalid_argument("variable index " + std::to_string(j) + " out of range [0," +
                                std::to_string(f.nvars()) + ")");
}

}  // namespace

MultiPoly MultiPoly::constant(int nvars, Complex c) {
  MultiPoly p(nvars);
  p.addTerm(ExpVec(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int j) {
  MultiPoly p(nvars);
  requireVarIndex(p, j);
  ExpVec e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(j)] = 1;
  p.addTerm(e, Complex(1.0));
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, ExpVec exp, Complex c) {
  MultiPoly p(nvars);
  if (static_cast<int>(exp.size()) != nvars)
    throw std::invalid_argument("exponent vector length mismatch");
  for (int e : exp)
    if (e < 0) throw std::invalid_argument("negative exponent");
  p.addTerm(exp, c);
  return p;
}

int MultiPoly::totalDegree() const {
  int deg = -1;
  for (const auto& [exp, c] : terms_) {
    int s = 0;
    for (int e : exp) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

int MultiPoly::degreeIn(int j) const {
  requireVarIndex(*this, j);
  int deg = 0;
  for (const auto& [exp, c] : terms_) deg = std::max(deg, exp[static_cast<std::size_t>(j)]);
  return deg;
}

Complex MultiPoly::coefficient(const ExpVec& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double MultiPoly::maxAbsCoeff() const {
  double m = 0.0;
  for (const auto& [exp, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool MultiPoly::isRealCoeff(double relTol) const {
  double floor = relTol * std::max(1e-300, maxAbsCoeff());
  for (const auto& [exp, c] : terms_)
    if (std::abs(c.imag()) > floor) return false;
  return true;
}

void MultiPoly::addTerm(const ExpVec& exp, Complex c) {
  if (static_cast<int>(exp.size()) != nvars_)
    throw std::invalid_argument("exponent vector length mismatch");
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw std::invalid_argument("non-finite coefficient");
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

MultiPoly MultiPoly::withNvars(int d) const {
  if (d < nvars_) throw std::invalid_argument("cannot shrink variable count");
  if (d == nvars_) return *this;
  MultiPoly r(d);
  for (const auto& [exp, c] : terms_) {
    ExpVec e = exp;
    e.resize(static_cast<std::size_t>(d), 0);
    r.addTerm(e, c);
  }
  return r;
}

MultiPoly MultiPoly::pruned(double relTol) const { return prunedAbs(relTol * maxAbsCoeff()); }

MultiPoly MultiPoly::prunedAbs(double absFloor) const {
  MultiPoly r(nvars_);
  for (const auto& [exp, c] : terms_)
    if (std::abs(c) >= absFloor) r.addTerm(exp, c);
  return r;
}

MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) {
  requireSameNvars(f, g);
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) r.addTerm(exp, c);
  for (const auto& [exp, c] : g.terms()) r.addTerm(exp, c);
  return r.prunedAbs(kCanonicalPruneRel * std::max(f.maxAbsCoeff(), g.maxAbsCoeff()));
}

MultiPoly operator-(const MultiPoly& f) {
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) r.addTerm(exp, -c);
  return r;
}

MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) { return f + (-g); }

MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
  requireSameNvars(f, g);
  MultiPoly r(f.nvars());
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      ExpVec e = ef;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eg[k];
      r.addTerm(e, cf * cg);
    }
  }
  return r.prunedAbs(kCanonicalPruneRel * f.maxAbsCoeff() * g.maxAbsCoeff());
}

MultiPoly operator*(Complex a, const MultiPoly& f) {
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) r.addTerm(exp, a * c);
  return r;
}

std::pair<MultiPoly, MultiPoly> alignNvars(const MultiPoly& f, const MultiPoly& g) {
  int d = std::max(f.nvars(), g.nvars());
  return {f.withNvars(d), g.withNvars(d)};
}

Complex evalAt(const MultiPoly& f, const std::vector<Complex>& point) {
  if (static_cast<int>(point.size()) != f.nvars())
    throw std::invalid_argument("evaluation point dimension mismatch");
  Complex acc(0.0);
  for (const auto& [exp, c] : f.terms()) {
    Complex t = c;
    for (std::size_t k = 0; k < exp.size(); ++k)
      if (exp[k] > 0) t *= cpow(point[k], exp[k]);
    acc += t;
  }
  return acc;
}

MultiPoly partialDerivative(const MultiPoly& f, int j) {
  requireVarIndex(f, j);
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) {
    int e = exp[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    ExpVec d = exp;
    d[static_cast<std::size_t>(j)] = e - 1;
    r.addTerm(d, c * double(e));
  }
  return r;
}

MultiPoly coefficientSlice(const MultiPoly& f, int j, int k) {
  requireVarIndex(f, j);
  if (k < 0) throw std::invalid_argument("negative slice degree");
  MultiPoly r(f.nvars() - 1);
  for (const auto& [exp, c] : f.terms()) {
    if (exp[static_cast<std::size_t>(j)] != k) continue;
    ExpVec e;
    e.reserve(exp.size() - 1);
    for (std::size_t m = 0; m < exp.size(); ++m)
      if (static_cast<int>(m) != j) e.push_back(exp[m]);
    r.addTerm(e, c);
  }
  return r;
}

MultiPoly reverseInVar(const MultiPoly& f, int j) {
  requireVarIndex(f, j);
  int n = f.degreeIn(j);
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) {
    ExpVec e = exp;
    e[static_cast<std::size_t>(j)] = n - exp[static_cast<std::size_t>(j)];
    r.addTerm(e, c);
  }
  return r;
}

std::pair<MultiPoly, MultiPoly> evenOddParts(const MultiPoly& f) {
  MultiPoly even(f.nvars()), odd(f.nvars());
  for (const auto& [exp, c] : f.terms()) {
    int s = 0;
    for (int e : exp) s += e;
    (s % 2 == 0 ? even : odd).addTerm(exp, c);
  }
  return {even, odd};
}

MultiPoly topHomogeneous(const MultiPoly& f) {
  if (f.isZero()) throw std::invalid_argument("top homogeneous part of the zero polynomial");
  int n = f.totalDegree();
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) {
    int s = 0;
    for (int e : exp) s += e;
    if (s == n) r.addTerm(exp, c);
  }
  return r;
}

MultiPoly rotateHalfplane(const MultiPoly& f, Rotation direction) {
  // Multiplying terms by (+-i)^degree is a pure phase: swap/negate parts, no rounding.
  MultiPoly r(f.nvars());
  for (const auto& [exp, c] : f.terms()) {
    int s = 0;
    for (int e : exp) s += e;
    int phase = s % 4;  // i^phase or (-i)^phase
    if (direction == Rotation::StableToUpper) phase = (4 - phase) % 4;
    Complex v = c;
    switch (phase) {
      case 0: break;
      case 1: v = Complex(-v.imag(), v.real()); break;
      case 2: v = -v; break;
      case 3: v = Complex(v.imag(), -v.real()); break;
    }
    r.addTerm(exp, v);
  }
  return r;
}

UniPoly restrictLine(const MultiPoly& f, const std::vector<Complex>& base,
                     const std::vector<double>& dir) {
  if (static_cast<int>(base.size()) != f.nvars() || base.size() != dir.size())
    throw std::invalid_argument("base/direction dimension mismatch");
  bool nonzero = false;
  for (double d : dir) nonzero = nonzero || d != 0.0;
  if (!nonzero) throw std::invalid_argument("zero direction");

  UniPoly acc;
  for (const auto& [exp, c] : f.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t k = 0; k < exp.size(); ++k) {
      if (exp[k] == 0) continue;
      UniPoly lin({base[k], Complex(dir[k])});
      UniPoly powed = UniPoly::constant(Complex(1.0));
      int e = exp[k];
      UniPoly b = lin;
      while (e > 0) {
        if (e & 1) powed *= b;
        b *= b;
        e >>= 1;
      }
      t *= powed;
    }
    acc += t;
  }
  return acc;
}

UniPoly restrictToVariable(const MultiPoly& f, int j, const std::vector<Complex>& values) {
  requireVarIndex(f, j);
  if (static_cast<int>(values.size()) != f.nvars())
    throw std::invalid_argument("restriction values dimension mismatch");
  std::vector<Complex> coeffs(static_cast<std::size_t>(f.degreeIn(j)) + 1, Complex(0.0));
  for (const auto& [exp, c] : f.terms()) {
    Complex t = c;
    for (std::size_t k = 0; k < exp.size(); ++k) {
      if (static_cast<int>(k) == j || exp[k] == 0) continue;
      t *= cpow(values[k], exp[k]);
    }
    coeffs[static_cast<std::size_t>(exp[static_cast<std::size_t>(j)])] += t;
  }
  return UniPoly(std::move(coeffs));
}

MultiPoly affineSubstitute(const MultiPoly& f, const AffineSubstitution& sub) {
  const int d = f.nvars();
  if (static_cast<int>(sub.rules.size()) != d)
    throw std::invalid_argument("substitution rule count must equal nvars");

  // Validate rules and lay out the output variable space: kept slots keep
  // their relative order, fresh split variables are appended.
  std::vector<int> outIndex(static_cast<std::size_t>(d), -1);
  int outVars = 0;
  for (int j = 0; j < d; ++j) {
    const VarRule& r = sub.rules[static_cast<std::size_t>(j)];
    switch (r.kind) {
      case VarRule::Kind::Scale:
        if (!(r.factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
        outIndex[static_cast<std::size_t>(j)] = outVars++;
        break;
      case VarRule::Kind::Shift:
        if (!(r.value.real() > 0.0))
          throw std::invalid_argument("shift must have positive real part");
        outIndex[static_cast<std::size_t>(j)] = outVars++;
        break;
      case VarRule::Kind::Keep:
      case VarRule::Kind::SplitSum:
        outIndex[static_cast<std::size_t>(j)] = outVars++;
        break;
      case VarRule::Kind::RenameTo: {
        if (r.target < 0 || r.target >= d || r.target == j)
          throw std::invalid_argument("rename target out of range");
        if (sub.rules[static_cast<std::size_t>(r.target)].kind != VarRule::Kind::Keep &&
            sub.rules[static_cast<std::size_t>(r.target)].kind != VarRule::Kind::Scale &&
            sub.rules[static_cast<std::size_t>(r.target)].kind != VarRule::Kind::Shift)
          throw std::invalid_argument("rename target must be a kept variable");
        break;
      }
      case VarRule::Kind::FixValue:
      case VarRule::Kind::FixImag:
        break;
    }
  }
  std::vector<int> splitFresh(static_cast<std::size_t>(d), -1);
  for (int j = 0; j < d; ++j)
    if (sub.rules[static_cast<std::size_t>(j)].kind == VarRule::Kind::SplitSum)
      splitFresh[static_cast<std::size_t>(j)] = outVars++;

  // Affine image of each input variable over the output space.
  struct Image {
    Complex constant{};
    std::vector<std::pair<int, Complex>> linear;
  };
  std::vector<Image> images(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const VarRule& r = sub.rules[static_cast<std::size_t>(j)];
    Image& im = images[static_cast<std::size_t>(j)];
    switch (r.kind) {
      case VarRule::Kind::Keep:
        im.linear.push_back({outIndex[static_cast<std::size_t>(j)], Complex(1.0)});
        break;
      case VarRule::Kind::Scale:
        im.linear.push_back({outIndex[static_cast<std::size_t>(j)], Complex(r.factor)});
        break;
      case VarRule::Kind::Shift:
        im.constant = r.value;
        im.linear.push_back({outIndex[static_cast<std::size_t>(j)], Complex(1.0)});
        break;
      case VarRule::Kind::FixValue:
      case VarRule::Kind::FixImag:
        im.constant = r.value;
        break;
      case VarRule::Kind::RenameTo:
        im.linear.push_back({outIndex[static_cast<std::size_t>(r.target)], Complex(1.0)});
        break;
      case VarRule::Kind::SplitSum:
        im.linear.push_back({outIndex[static_cast<std::size_t>(j)], Complex(1.0)});
        im.linear.push_back({splitFresh[static_cast<std::size_t>(j)], Complex(1.0)});
        break;
    }
  }

  auto imagePoly = [&](int j) {
    const Image& im = images[static_cast<std::size_t>(j)];
    MultiPoly p(outVars);
    if (im.constant != Complex(0.0) || im.linear.empty())
      p.addTerm(ExpVec(static_cast<std::size_t>(outVars), 0), im.constant);
    for (const auto& [var, coef] : im.linear) {
      ExpVec e(static_cast<std::size_t>(outVars), 0);
      e[static_cast<std::size_t>(var)] = 1;
      p.addTerm(e, coef);
    }
    return p;
  };

  MultiPoly acc(outVars);
  for (const auto& [exp, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(outVars, c);
    for (int j = 0; j < d; ++j) {
      int e = exp[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      MultiPoly b = imagePoly(j);
      MultiPoly powed = MultiPoly::constant(outVars, Complex(1.0));
      while (e > 0) {
        if (e & 1) powed = powed * b;
        b = b * b;
        e >>= 1;
      }
      t = t * powed;
    }
    acc = acc + t;
  }
  return acc;
}

UniPoly toUniPoly(const MultiPoly& f) {
  if (f.nvars() > 1) throw std::invalid_argument("not univariate");
  std::vector<Complex> c(static_cast<std::size_t>(f.nvars() == 1 ? f.degreeIn(0) : 0) + 1,
                         Complex(0.0));
  for (const auto& [exp, v] : f.terms())
    c[static_cast<std::size_t>(exp.empty() ? 0 : exp[0])] = v;
  return UniPoly(std::move(c));
}

MultiPoly toMultiPoly(const UniPoly& p, int nvars, int j) {
  MultiPoly r(nvars);
  requireVarIndex(r, j);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == Complex(0.0)) continue;
    ExpVec e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(j)] = k;
    r.addTerm(e, p.coeff(k));
  }
  return r;
}

}  // namespace stablepoly
