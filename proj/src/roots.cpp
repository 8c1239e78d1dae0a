#include "stablepoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "stablepoly/errors.hpp"
#include "stablepoly/rng.hpp"

namespace stablepoly {

namespace {

// p and p' at x in one Horner pass.
std::pair<Complex, Complex> evalWithDerivative(const std::vector<Complex>& c, Complex x) {
  Complex p(0.0), dp(0.0);
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
  return {p, dp};
}

// Relative backward error of z as a root of the polynomial with coefficients c.
double backwardError(const std::vector<Complex>& c, Complex z) {
  Complex p(0.0);
  double scale = 0.0;
  double az = std::abs(z);
  double zp = 1.0;
  for (std::size_t i = c.size(); i-- > 0;) p = p * z + c[i];
  for (std::size_t i = 0; i < c.size(); ++i) {
    scale += std::abs(c[i]) * zp;
    zp *= az;
  }
  return std::abs(p) / std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace

RootSet allRoots(const UniPoly& p, double tol, std::uint64_t seed) {
  int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("root finding needs degree >= 1");

  // Peel off exact roots at the origin, then normalize to monic.
  std::vector<Complex> c = p.coeffs();
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && c[zeros] == Complex(0.0)) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
  Complex lead = c.back();
  for (Complex& v : c) v /= lead;

  RootSet out;
  out.roots.assign(zeros, Complex(0.0));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return out;

  Rng rng(Rng::mix(seed, 0x726f6f74));

  // Initial guesses on a circle sized by the coefficient magnitudes, with an
  // angular offset that breaks the symmetry of polynomials like x^n + a.
  double cauchy = 0.0;
  for (int i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[static_cast<std::size_t>(i)]));
  double radius = std::min(1.0 + cauchy, 1e8);
  double inner = std::pow(std::max(std::abs(c[0]), 1e-16), 1.0 / n);
  radius = std::clamp(std::sqrt(radius * std::max(inner, 1e-8)), 1e-6, 1e8);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double ang = 6.283185307179586 * (i + 0.25) / n + 0.42;
    z[static_cast<std::size_t>(i)] = radius * Complex(std::cos(ang), std::sin(ang));
  }

  const double lockTol = std::max(8.0 * n * std::numeric_limits<double>::epsilon(), 1e-15);
  std::vector<bool> locked(static_cast<std::size_t>(n), false);
  const int maxSweeps = 600;
  int sinceImprovement = 0;
  int restarts = 0;
  double bestStep = std::numeric_limits<double>::infinity();

  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    double maxStep = 0.0;
    int lockedCount = 0;
    for (int i = 0; i < n; ++i) {
      if (locked[static_cast<std::size_t>(i)]) {
        ++lockedCount;
        continue;
      }
      Complex zi = z[static_cast<std::size_t>(i)];
      auto [pv, dv] = evalWithDerivative(c, zi);
      if (backwardError(c, zi) <= lockTol) {
        locked[static_cast<std::size_t>(i)] = true;
        ++lockedCount;
        continue;
      }
      if (dv == Complex(0.0)) {
        z[static_cast<std::size_t>(i)] += 1e-6 * radius * Complex(rng.normal(), rng.normal());
        continue;
      }
      Complex newton = pv / dv;
      Complex repel(0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = zi - z[static_cast<std::size_t>(j)];
        if (std::abs(diff) < 1e-300)
          diff = 1e-12 * radius * Complex(rng.normal(), rng.normal());
        repel += Complex(1.0) / diff;
      }
      Complex denom = Complex(1.0) - newton * repel;
      Complex step = std::abs(denom) < 1e-300 ? newton : newton / denom;
      z[static_cast<std::size_t>(i)] = zi - step;
      maxStep = std::max(maxStep, std::abs(step) / (1.0 + std::abs(zi)));
    }
    if (lockedCount == n) break;
    if (maxStep < 0.7 * bestStep) {
      bestStep = maxStep;
      sinceImprovement = 0;
    } else if (++sinceImprovement > 25) {
      // Stagnation: random relative perturbation of the unconverged roots.
      if (++restarts > 10) break;
      for (int i = 0; i < n; ++i)
        if (!locked[static_cast<std::size_t>(i)])
          z[static_cast<std::size_t>(i)] *=
              Complex(1.0) + 1e-3 * Complex(rng.normal(), rng.normal());
      sinceImprovement = 0;
      bestStep = std::numeric_limits<double>::infinity();
    }
  }

  // Final Newton polish (helps simple roots reach machine accuracy).
  for (int i = 0; i < n; ++i) {
    Complex zi = z[static_cast<std::size_t>(i)];
    for (int it = 0; it < 3; ++it) {
      auto [pv, dv] = evalWithDerivative(c, zi);
      if (dv == Complex(0.0)) break;
      Complex step = pv / dv;
      if (!(std::abs(step) < 1.0 + std::abs(zi))) break;
      Complex cand = zi - step;
      if (backwardError(c, cand) <= backwardError(c, zi)) zi = cand;
    }
    z[static_cast<std::size_t>(i)] = zi;
  }

  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    residual = std::max(residual, backwardError(c, z[static_cast<std::size_t>(i)]));
  if (residual > tol)
    throw NumericalError("root finder did not converge (residual " + std::to_string(residual) +
                         " > tol)");

  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  out.roots.insert(out.roots.end(), z.begin(), z.end());
  out.residual = residual;
  return out;
}

HurwitzVerdict hurwitzVerdict(const UniPoly& p, double tol, std::uint64_t seed) {
  if (p.isZero()) throw std::invalid_argument("hurwitz verdict of the zero polynomial");
  HurwitzVerdict v;
  if (p.degree() == 0) {
    v.stable = true;
    v.margin = std::numeric_limits<double>::infinity();
    return v;
  }
  RootSet rs = allRoots(p, 1e-7, seed);
  double maxRe = -std::numeric_limits<double>::infinity();
  for (Complex r : rs.roots) {
    if (r.real() > maxRe) {
      maxRe = r.real();
      v.worstRoot = r;
    }
  }
  v.margin = -maxRe;
  v.stable = maxRe <= tol;
  return v;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational exactRational(double v) {
  // Every finite double is a dyadic rational; decompose via frexp.
  if (v == 0.0) return Rational(0);
  int exp2 = 0;
  double m = std::frexp(v, &exp2);  // v = m * 2^exp2, |m| in [0.5, 1)
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp2 -= 53;
  Rational r(mant);
  boost::multiprecision::cpp_int two(2);
  if (exp2 >= 0)
    r *= Rational(boost::multiprecision::pow(two, exp2));
  else
    r /= Rational(boost::multiprecision::pow(two, -exp2));
  return r;
}

}  // namespace

bool routhHurwitzReal(const UniPoly& p) {
  if (p.isZero() || p.leading() == Complex(0.0))
    throw std::invalid_argument("Routh table needs a non-zero leading coefficient");
  for (const Complex& c : p.coeffs())
    if (c.imag() != 0.0) throw std::invalid_argument("Routh table requires real coefficients");

  int n = p.degree();
  if (n == 0) return true;

  // First two rows hold the alternating coefficients, highest degree first.
  std::vector<Rational> row0, row1;
  for (int k = n; k >= 0; k -= 2) row0.push_back(exactRational(p.coeff(k).real()));
  for (int k = n - 1; k >= 0; k -= 2) row1.push_back(exactRational(p.coeff(k).real()));

  std::vector<Rational> firstColumn{row0[0]};
  std::vector<Rational> prev = row0, cur = row1;
  for (int r = 1; r <= n; ++r) {
    if (cur.empty() || cur[0] == 0) return false;  // zero pivot: not strictly Hurwitz
    firstColumn.push_back(cur[0]);
    if (r == n) break;
    std::vector<Rational> next;
    std::size_t len = cur.size() >= 1 ? std::max<std::size_t>(prev.size(), cur.size()) : 0;
    for (std::size_t j = 0; j + 1 < len + 1; ++j) {
      Rational a = (j + 1 < prev.size()) ? prev[j + 1] : Rational(0);
      Rational b = (j + 1 < cur.size()) ? cur[j + 1] : Rational(0);
      next.push_back((cur[0] * a - prev[0] * b) / cur[0]);
    }
    while (!next.empty() && next.back() == 0) next.pop_back();
    if (next.empty() && r + 1 <= n) return false;  // premature row of zeros
    prev = cur;
    cur = next;
  }

  bool positive = firstColumn[0] > 0;
  for (const Rational& v : firstColumn) {
    if (v == 0) return false;
    if ((v > 0) != positive) return false;
  }
  return true;
}

bool realRooted(const UniPoly& p, double tol, std::uint64_t seed) {
  if (p.isZero()) throw std::invalid_argument("real-rootedness of the zero polynomial");
  if (p.degree() == 0) return true;
  RootSet rs = allRoots(p, 1e-7, seed);
  for (Complex r : rs.roots)
    if (std::abs(r.imag()) > tol * (1.0 + std::abs(r))) return false;
  return true;
}

std::optional<std::vector<double>> nonPositiveRealRoots(const UniPoly& p, double tol) {
  if (p.isZero() || !isRealPoly(p)) return std::nullopt;
  if (p.leading().real() <= 0.0) return std::nullopt;
  if (p.degree() == 0) return std::vector<double>{};
  if (!realRooted(p, tol)) return std::nullopt;
  RootSet rs = allRoots(p, 1e-7);
  std::vector<double> roots;
  roots.reserve(rs.roots.size());
  for (Complex r : rs.roots) {
    if (r.real() > tol * (1.0 + std::abs(r))) return std::nullopt;
    roots.push_back(r.real());
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

bool rootsInterlaceBelow(const std::vector<double>& top, const std::vector<double>& bottom,
                         double tol) {
  if (top.size() < bottom.size() || top.size() > bottom.size() + 1) return false;
  for (std::size_t i = 0; i < bottom.size(); ++i) {
    double slack = tol * (1.0 + std::abs(bottom[i]));
    if (top[i] < bottom[i] - slack) return false;
    if (i + 1 < top.size() && bottom[i] < top[i + 1] - slack) return false;
  }
  return true;
}

std::optional<UniPoly> commonInterlacer(const UniPoly& f, const UniPoly& g, double tol) {
  auto rf = nonPositiveRealRoots(f, tol);
  auto rg = nonPositiveRealRoots(g, tol);
  if (!rf || !rg)
    throw std::invalid_argument(
        "common interlacer requires real-rooted inputs with non-positive roots and positive "
        "leading coefficients");
  if (std::abs(static_cast<int>(rf->size()) - static_cast<int>(rg->size())) > 1)
    throw std::invalid_argument("common interlacer requires degrees differing by at most one");

  // Candidate: every second entry of the merged (descending) root list.
  std::vector<double> merged;
  merged.reserve(rf->size() + rg->size());
  merged.insert(merged.end(), rf->begin(), rf->end());
  merged.insert(merged.end(), rg->begin(), rg->end());
  std::sort(merged.rbegin(), merged.rend());
  std::vector<double> hr;
  for (std::size_t i = 0; i < merged.size(); i += 2) hr.push_back(merged[i]);

  if (!rootsInterlaceBelow(hr, *rf, tol) || !rootsInterlaceBelow(hr, *rg, tol))
    return std::nullopt;
  std::vector<Complex> roots(hr.begin(), hr.end());
  return fromRoots(roots);
}

}  // namespace stablepoly
