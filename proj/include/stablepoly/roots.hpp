#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablepoly/unipoly.hpp"

namespace stablepoly {

struct RootSet {
  std::vector<Complex> roots;  // one entry per degree, repeated roots listed individually
  double residual = 0.0;       // max relative backward error over the roots
};

// All complex roots by Aberth-Ehrlich simultaneous iteration with random
// perturbation restarts on stagnation. Throws NumericalError if the residual
// target tol cannot be met within the iteration budget.
RootSet allRoots(const UniPoly& p, double tol = 1e-9, std::uint64_t seed = 0);

struct HurwitzVerdict {
  bool stable = true;                 // no root with Re > tol (open-RHP non-vanishing)
  std::optional<Complex> worstRoot;   // root of maximal real part; absent for constants
  double margin = 0.0;                // -max Re(root); +inf for constants
};

HurwitzVerdict hurwitzVerdict(const UniPoly& p, double tol = 1e-9, std::uint64_t seed = 0);

// Exact-rational Routh table; true iff every root lies in the open left half
// plane. Deliberately strict: boundary roots (and zero pivots) give false,
// so this brackets hurwitzVerdict on boundary cases. Requires real
// coefficients and a non-zero leading coefficient.
bool routhHurwitzReal(const UniPoly& p);

// True iff every root satisfies |Im| <= tol * (1 + |root|).
bool realRooted(const UniPoly& p, double tol = 1e-9, std::uint64_t seed = 0);

// For f, g real-rooted with non-positive roots, positive leading coefficients
// and degrees differing by at most one: an h whose roots weakly separate the
// merged root lists when one exists (taking every second entry of the sorted
// union), otherwise nullopt. Precondition violations throw invalid_argument.
std::optional<UniPoly> commonInterlacer(const UniPoly& f, const UniPoly& g, double tol = 1e-9);

// Sorted descending real parts of a real-rooted polynomial's roots; nullopt
// if p is outside the cone (real-rooted, roots <= tol, positive leading
// coefficient, real coefficients).
std::optional<std::vector<double>> nonPositiveRealRoots(const UniPoly& p, double tol = 1e-9);

// Weak alternation test: top's sorted-descending roots t and bottom's b admit
// t1 >= b1 >= t2 >= b2 >= ... with slack tol; degrees must differ by 0 or 1
// with top at least as large.
bool rootsInterlaceBelow(const std::vector<double>& top, const std::vector<double>& bottom,
                         double tol = 1e-9);

}  // namespace stablepoly
