#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "stablepoly/multipoly.hpp"
#include "stablepoly/stability.hpp"

namespace stablepoly {

struct PencilTail {
  enum class Kind { None, Skew, ImagSym };
  Kind kind = Kind::None;
  Eigen::MatrixXd M;  // skew-symmetric or symmetric depending on kind
};

// det(I + x_1 D_1 + ... + x_d D_d + tail) with positive definite D_i and a
// real skew-symmetric or i*symmetric tail.
struct PencilSpec {
  int n = 1;
  int d = 1;
  std::vector<Eigen::MatrixXd> D;
  PencilTail tail;
};

nlohmann::json toJson(const PencilSpec& spec);
PencilSpec pencilSpecFromJson(const nlohmann::json& j);

struct CertifiedPoly {
  MultiPoly poly;
  CertificateKind certificate = CertificateKind::ProductAffine;
};

// Expands the pencil determinant: minor expansion with memoization for
// n <= 8, evaluation-interpolation on a roots-of-unity tensor grid above
// that; n > 12 is rejected. Skew/None tails certify det_pencil_skew,
// ImagSym certifies det_pencil_imag.
CertifiedPoly detPencil(const PencilSpec& spec);

Eigen::MatrixXd randomPd(int n, std::uint64_t seed);    // M^T M + 1e-3 I, symmetrized
Eigen::MatrixXd randomSkew(int n, std::uint64_t seed);  // (M - M^T)/2
Eigen::MatrixXd randomSym(int n, std::uint64_t seed);   // (M + M^T)/2

// B(x,y) = (f(x)g(y) - f(y)g(x)) / (x - y), computed by exact synthetic
// division (the numerator vanishes on x = y). Symmetric in (x, y). Throws
// NumericalError if the division remainder exceeds tolerance.
MultiPoly bezout(const UniPoly& f, const UniPoly& g);

// f g' - f' g.
UniPoly wronskian(const UniPoly& f, const UniPoly& g);

// Three-term recurrence f_{k+1} = (a_k x + b_k) f_k - c_k f_{k-1}, f_{-1} = 0,
// f_0 = 1, with a_k > 0 and c_k > 0 (k >= 1). The presets are orthonormal
// recurrences with the measure translated onto the negative axis, so every
// generated member is real-rooted with non-positive roots.
struct OrthoFamily {
  std::vector<double> a, b, c;  // c[0] is unused

  static OrthoFamily legendre(int count);    // support [-2, 0]
  static OrthoFamily chebyshevT(int count);  // support [-2, 0]
  static OrthoFamily hermite(int count);     // probabilist, shifted by -6

  // f_0..f_n; validates the recurrence invariants and real-rootedness of
  // every member.
  std::vector<UniPoly> generate(int n) const;
};

struct ChristoffelResult {
  UniPoly sum;      // f_0^2 + ... + f_n^2
  UniPoly det;      // (k_n / k_{n+1}) (f_n f_{n+1}' - f_n' f_{n+1})
  double residual;  // coefficientwise relative difference of the two
};
ChristoffelResult christoffelDarboux(const OrthoFamily& family, int n);

// Coefficientwise product along variable j of g against the dense
// coefficients of f.
MultiPoly hadamard(const UniPoly& f, const MultiPoly& g, int j);

// x_j^i |-> x_j^i / i!.
MultiPoly expTransform(const MultiPoly& f, int j);

// For a 2-variable F: the r x r determinant of the Hankel slice matrix
// [f_{base+i+k}] along variable j. For a 3-variable F: the r x r determinant
// of the double-index slice matrix [f_{base+i, base+k}] in variables
// (j, j+1), expanded over the remaining variable.
MultiPoly coeffHankelDet(const MultiPoly& F, int j, int r, int base);

// (f_0^2, f_1^2 - alpha f_0 f_2) from the slices of F along variable j,
// for downstream ~H checking; requires 0 < alpha < 2.
std::pair<MultiPoly, MultiPoly> alphaTwoDet(const MultiPoly& F, int j, double alpha);

// For d = 3 pencils with diagonal D_1 and entrywise-positive D_2, D_3:
// extracts f,g,h,k as the 1, y, z, yz coefficients of the determinant and
// returns f k - g h.
UniPoly pencilCoeffDet(const PencilSpec& spec);

enum class StableRecipe { Product, ProductReal, Pencil, Composition };

// Certified-stable random polynomials: products of right-half-plane-safe
// affine forms, pencil determinants, or closure-operation compositions of
// those.
CertifiedPoly randomStable(int nvars, int degree, std::uint64_t seed, StableRecipe recipe);

}  // namespace stablepoly
