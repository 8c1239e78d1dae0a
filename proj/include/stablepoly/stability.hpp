#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stablepoly/multipoly.hpp"

namespace stablepoly {

enum class CertificateKind { ProductAffine, DetPencilSkew, DetPencilImag, ClosureDerived };
const char* toString(CertificateKind kind);

struct SamplerConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  double radius = 4.0;      // imaginary parts uniform on [-radius, radius]
  double realFloor = 1e-2;  // real parts log-uniform on (realFloor, radius]
  double tol = 1e-9;
  int polishSteps = 50;
  bool fullLines = false;  // restrict along random lines instead of coordinate fibers
};

// A point with every coordinate strictly in the right half plane at which the
// polynomial (numerically) vanishes. `witness` may be empty when the
// refutation came from a coefficient-level necessary condition; `reason` then
// explains it.
struct Unstable {
  std::vector<Complex> witness;
  Complex value{};
  std::string reason;
};

struct ProbablyStable {
  int trials = 0;
  std::uint64_t seed = 0;
  double minMargin = 0.0;  // smallest -max Re(root) seen over all restrictions
};

struct StableByCertificate {
  CertificateKind kind;
};

using StabilityVerdict = std::variant<Unstable, ProbablyStable, StableByCertificate>;

inline bool isRefuted(const StabilityVerdict& v) {
  return std::holds_alternative<Unstable>(v);
}

nlohmann::json toJson(const StabilityVerdict& v);

struct BatteryResult {
  bool pass = true;
  std::string reason;                    // set when pass == false
  std::optional<Complex> diagonalRoot;   // RHP root of f(x,...,x) when that check fails
};

// Sound necessary conditions: mixed-sign real coefficients, top-homogeneous
// coefficients of unequal argument, or an unstable diagonal restriction each
// refute stability outright.
BatteryResult necessaryBattery(const MultiPoly& f);

// Monte-Carlo refuter: fixes all but one randomly chosen variable at random
// right-half-plane values and root-checks the restriction; candidate
// witnesses are polished by damped Newton and accepted only strictly inside
// the half plane with |f| below 1e-8 of the coefficient scale.
StabilityVerdict refuteMonteCarlo(const MultiPoly& f, const SamplerConfig& cfg);

// Battery, then certificate passthrough, then Monte-Carlo.
StabilityVerdict decide(const MultiPoly& f, const SamplerConfig& cfg,
                        std::optional<CertificateKind> certificate = std::nullopt);

// f + y g with y a fresh last variable; requires equal nvars.
MultiPoly joinWithFreshVar(const MultiPoly& f, const MultiPoly& g);

// Witness soundness: all coordinates Re > 0 and |f(w)| < 1e-8 * scale, where
// scale is the termwise magnitude sum of f at w.
bool witnessIsValid(const MultiPoly& f, const std::vector<Complex>& witness);

}  // namespace stablepoly
