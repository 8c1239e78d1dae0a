#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablepoly/multipoly.hpp"
#include "stablepoly/stability.hpp"

namespace stablepoly {

// H / U / P: f + y g lies in the stable / upper / positive class with y a
// fresh variable. Hsim / Psim: f + r g lies in the class for every r > 0.
enum class Relation { H, U, P, Hsim, Psim };
const char* toString(Relation rel);
std::optional<Relation> relationFromString(const std::string& name);

enum class Region { SlitPlane, ClosedRHP, Quadrant1, OpenRHP };

enum class Tristate { Yes, No, Probably };
const char* toString(Tristate t);

struct RelationVerdict {
  Tristate holds = Tristate::Probably;
  std::string method;  // "join" | "ratio_map" | "root_interlacing" | "sampled_r"
  std::optional<std::vector<Complex>> witnessPoint;  // violating point, when concrete
  std::optional<double> witnessR;                    // violating r for the sim relations
  std::string detail;
};

nlohmann::json toJson(const RelationVerdict& v);

// Positive-class membership (all-positive real coefficients, stable, upper).
// Exact in one variable via the real-rooted non-positive-root cone; sampled
// otherwise.
struct PposVerdict {
  Tristate member = Tristate::Probably;
  std::string reason;
  std::optional<std::vector<Complex>> witness;
};
PposVerdict pposCheck(const MultiPoly& f, const SamplerConfig& cfg);

// True when every stored coefficient is real (to noise tolerance) and positive.
bool allCoeffsPositiveReal(const MultiPoly& f, double relTol = 1e-12);

RelationVerdict checkRelation(const MultiPoly& f, const MultiPoly& g, Relation rel,
                              const SamplerConfig& cfg);

// One-variable ratio-map criterion: samples sigma over the open first
// quadrant (log-polar mesh plus random points) and tests whether f/g lands in
// the target region, with boundary tolerance 1e-10. Requires real
// coefficients; points too close to roots of g are skipped.
struct RatioCheckResult {
  bool holds = true;
  std::optional<Complex> counterexample;
  std::optional<Complex> image;
};
RatioCheckResult ratioRegionCheck(const UniPoly& f, const UniPoly& g, Region region, int grid,
                                  std::uint64_t seed);

// Splits f by total-degree parity and checks even <=H odd, which matches
// decide(f) up to the probabilistic verdict; a zero part degenerates to
// decide(f) directly.
RelationVerdict hermiteBiehlerCheck(const MultiPoly& f, const SamplerConfig& cfg);

struct ChainEntry {
  int lo = 0, hi = 0;       // slice indices compared
  Relation rel = Relation::H;
  RelationVerdict verdict;
};

// Consecutive slices f_i <=H f_{i+1} along variable j (skipping both-zero
// pairs) and second-gap slices f_k ~H f_{k+2}.
std::vector<ChainEntry> coefficientChainCheck(const MultiPoly& F, int j,
                                              const SamplerConfig& cfg);

}  // namespace stablepoly
