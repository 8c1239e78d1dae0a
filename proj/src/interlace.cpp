#include "stablepoly/interlace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stablepoly/rng.hpp"
#include "stablepoly/roots.hpp"

namespace stablepoly {

namespace {

constexpr double kBoundaryTol = 1e-10;
constexpr double kRatioPoleSkipRel = 1e-8;

RelationVerdict fromDecide(const StabilityVerdict& v, const char* method,
                           const std::string& detail, bool rotateWitnessBack = false) {
  RelationVerdict out;
  out.method = method;
  out.detail = detail;
  if (const auto* u = std::get_if<Unstable>(&v)) {
    out.holds = Tristate::No;
    if (!u->witness.empty()) {
      std::vector<Complex> w = u->witness;
      if (rotateWitnessBack)  // witness of f(ix): the underlying zero is at i*w
        for (Complex& c : w) c = Complex(-c.imag(), c.real());
      out.witnessPoint = w;
    }
    if (!u->reason.empty()) out.detail += (out.detail.empty() ? "" : "; ") + u->reason;
  } else {
    out.holds = Tristate::Probably;
  }
  return out;
}

std::vector<double> sampleRGrid(std::uint64_t seed) {
  std::vector<double> rs;
  for (int k = 0; k < 32; ++k)
    rs.push_back(std::pow(10.0, -3.0 + 6.0 * (k + 1) / 32.0));  // log-spaced in (1e-3, 1e3]
  Rng rng(Rng::mix(seed, 0x72677269));
  for (int k = 0; k < 8; ++k) rs.push_back(rng.logUniform(1e-3, 1e3));
  return rs;
}

// Limits r -> 0 and r -> inf of f + r g land on f and g; a strict refutation
// of either refutes the whole family.
std::optional<RelationVerdict> simEndpointRefutation(const MultiPoly& f, const MultiPoly& g,
                                                     bool requireUpper,
                                                     const SamplerConfig& cfg) {
  auto refute = [&](const MultiPoly& poly, const char* label,
                    double rValue) -> std::optional<RelationVerdict> {
    StabilityVerdict sv = refuteMonteCarlo(poly, cfg);
    if (isRefuted(sv)) {
      RelationVerdict rv = fromDecide(sv, "sampled_r", std::string(label) + " refuted");
      rv.witnessR = rValue;
      return rv;
    }
    if (requireUpper) {
      StabilityVerdict uv = refuteMonteCarlo(rotateHalfplane(poly, Rotation::UpperToStable), cfg);
      if (isRefuted(uv)) {
        RelationVerdict rv =
            fromDecide(uv, "sampled_r", std::string(label) + " refuted (upper)", true);
        rv.witnessR = rValue;
        return rv;
      }
    }
    return std::nullopt;
  };
  if (auto rv = refute(f, "r->0 limit", 0.0)) return rv;
  if (auto rv = refute(g, "r->inf limit", std::numeric_limits<double>::infinity())) return rv;
  return std::nullopt;
}

}  // namespace

const char* toString(Relation rel) {
  switch (rel) {
    case Relation::H: return "H";
    case Relation::U: return "U";
    case Relation::P: return "P";
    case Relation::Hsim: return "Hsim";
    case Relation::Psim: return "Psim";
  }
  return "?";
}

std::optional<Relation> relationFromString(const std::string& name) {
  if (name == "H") return Relation::H;
  if (name == "U") return Relation::U;
  if (name == "P") return Relation::P;
  if (name == "Hsim") return Relation::Hsim;
  if (name == "Psim") return Relation::Psim;
  return std::nullopt;
}

const char* toString(Tristate t) {
  switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::No: return "no";
    case Tristate::Probably: return "probably";
  }
  return "?";
}

nlohmann::json toJson(const RelationVerdict& v) {
  nlohmann::json j{{"holds", toString(v.holds)}, {"method", v.method}, {"detail", v.detail}};
  if (v.witnessPoint) {
    nlohmann::json w = nlohmann::json::array();
    for (Complex c : *v.witnessPoint) w.push_back({{"re", c.real()}, {"im", c.imag()}});
    j["witness"] = w;
  }
  if (v.witnessR) j["witness_r"] = *v.witnessR;
  return j;
}

bool allCoeffsPositiveReal(const MultiPoly& f, double relTol) {
  if (!f.isRealCoeff(relTol)) return false;
  for (const auto& [exp, c] : f.terms())
    if (!(c.real() > 0.0)) return false;
  return true;
}

PposVerdict pposCheck(const MultiPoly& f, const SamplerConfig& cfg) {
  PposVerdict out;
  if (f.isZero()) {
    out.member = Tristate::No;
    out.reason = "zero polynomial";
    return out;
  }
  if (!allCoeffsPositiveReal(f)) {
    out.member = Tristate::No;
    out.reason = "coefficients are not all positive real";
    return out;
  }
  if (f.nvars() <= 1) {
    auto roots = nonPositiveRealRoots(toUniPoly(f), cfg.tol);
    if (!roots) {
      out.member = Tristate::No;
      out.reason = "not real-rooted with non-positive roots";
    } else {
      out.member = Tristate::Yes;
    }
    return out;
  }
  StabilityVerdict sv = refuteMonteCarlo(f, cfg);
  if (const auto* u = std::get_if<Unstable>(&sv)) {
    out.member = Tristate::No;
    out.reason = "stability refuted";
    out.witness = u->witness;
    return out;
  }
  StabilityVerdict uv = refuteMonteCarlo(rotateHalfplane(f, Rotation::UpperToStable), cfg);
  if (const auto* u = std::get_if<Unstable>(&uv)) {
    out.member = Tristate::No;
    out.reason = "upper non-vanishing refuted";
    std::vector<Complex> w = u->witness;
    for (Complex& c : w) c = Complex(-c.imag(), c.real());
    out.witness = w;
    return out;
  }
  out.member = Tristate::Probably;
  return out;
}

namespace {

RelationVerdict checkJoinH(const MultiPoly& f, const MultiPoly& g, const SamplerConfig& cfg) {
  return fromDecide(decide(joinWithFreshVar(f, g), cfg), "join", "");
}

RelationVerdict checkJoinU(const MultiPoly& f, const MultiPoly& g, const SamplerConfig& cfg) {
  MultiPoly rotated = rotateHalfplane(joinWithFreshVar(f, g), Rotation::UpperToStable);
  return fromDecide(decide(rotated, cfg), "join", "", true);
}

RelationVerdict checkJoinP(const MultiPoly& f, const MultiPoly& g, const SamplerConfig& cfg) {
  // Exact path in one variable: the positive cone is characterized by roots.
  if (f.nvars() <= 1) {
    auto rf = nonPositiveRealRoots(toUniPoly(f), cfg.tol);
    auto rg = nonPositiveRealRoots(toUniPoly(g), cfg.tol);
    RelationVerdict out;
    out.method = "root_interlacing";
    if (!rf || !rg) {
      out.holds = Tristate::No;
      out.detail = "an argument is outside the positive cone";
      return out;
    }
    out.holds = rootsInterlaceBelow(*rf, *rg, 1e-7) ? Tristate::Yes : Tristate::No;
    if (out.holds == Tristate::No) out.detail = "sorted roots do not alternate";
    return out;
  }

  MultiPoly join = joinWithFreshVar(f, g);
  if (!allCoeffsPositiveReal(join)) {
    RelationVerdict out;
    out.holds = Tristate::No;
    out.method = "join";
    out.detail = "join has coefficients outside the positive reals";
    return out;
  }
  RelationVerdict h = fromDecide(decide(join, cfg), "join", "");
  if (h.holds == Tristate::No) return h;
  MultiPoly rotated = rotateHalfplane(join, Rotation::UpperToStable);
  RelationVerdict u = fromDecide(decide(rotated, cfg), "join", "", true);
  if (u.holds == Tristate::No) {
    u.detail = "upper membership of the join refuted";
    return u;
  }
  return h;  // probably
}

RelationVerdict checkSim(const MultiPoly& f, const MultiPoly& g, bool positiveClass,
                         const SamplerConfig& cfg) {
  RelationVerdict out;
  out.method = "sampled_r";

  if (!f.isRealCoeff() || !g.isRealCoeff()) {
    out.holds = Tristate::No;
    out.detail = "inputs must have real coefficients";
    return out;
  }

  // Exact path in one variable for the positive relation: in the cone,
  // membership for all r > 0 is equivalent to a common interlacer.
  if (positiveClass && f.nvars() <= 1) {
    auto rf = nonPositiveRealRoots(toUniPoly(f), cfg.tol);
    auto rg = nonPositiveRealRoots(toUniPoly(g), cfg.tol);
    out.method = "root_interlacing";
    if (!rf || !rg) {
      out.holds = Tristate::No;
      out.detail = "an argument is outside the positive cone";
      return out;
    }
    if (std::abs(static_cast<int>(rf->size()) - static_cast<int>(rg->size())) > 1) {
      out.holds = Tristate::No;
      out.detail = "degrees differ by more than one";
      return out;
    }
    auto h = commonInterlacer(toUniPoly(f), toUniPoly(g), cfg.tol);
    out.holds = h ? Tristate::Yes : Tristate::No;
    if (!h) out.detail = "no common interlacer";
    return out;
  }

  if (auto endpoint = simEndpointRefutation(f, g, positiveClass, cfg)) return *endpoint;

  for (double r : sampleRGrid(cfg.seed)) {
    MultiPoly p = f + Complex(r) * g;
    if (p.isZero() || !allCoeffsPositiveReal(p)) {
      out.holds = Tristate::No;
      out.witnessR = r;
      out.detail = "f + r g has coefficients outside the positive reals";
      return out;
    }
    StabilityVerdict sv = refuteMonteCarlo(p, cfg);
    if (const auto* u = std::get_if<Unstable>(&sv)) {
      out.holds = Tristate::No;
      out.witnessR = r;
      out.witnessPoint = u->witness;
      out.detail = "stability refuted at sampled r";
      return out;
    }
    if (positiveClass) {
      StabilityVerdict uv = refuteMonteCarlo(rotateHalfplane(p, Rotation::UpperToStable), cfg);
      if (const auto* u = std::get_if<Unstable>(&uv)) {
        out.holds = Tristate::No;
        out.witnessR = r;
        std::vector<Complex> w = u->witness;
        for (Complex& c : w) c = Complex(-c.imag(), c.real());
        out.witnessPoint = w;
        out.detail = "upper membership refuted at sampled r";
        return out;
      }
    }
  }
  out.holds = Tristate::Probably;
  return out;
}

}  // namespace

RelationVerdict checkRelation(const MultiPoly& f, const MultiPoly& g, Relation rel,
                              const SamplerConfig& cfg) {
  if (f.isZero() || g.isZero()) throw std::invalid_argument("relation check needs non-zero inputs");
  if (f.nvars() != g.nvars()) throw std::invalid_argument("relation check needs equal nvars");
  switch (rel) {
    case Relation::H: return checkJoinH(f, g, cfg);
    case Relation::U: return checkJoinU(f, g, cfg);
    case Relation::P: return checkJoinP(f, g, cfg);
    case Relation::Hsim: return checkSim(f, g, false, cfg);
    case Relation::Psim: return checkSim(f, g, true, cfg);
  }
  throw std::invalid_argument("unknown relation");
}

RatioCheckResult ratioRegionCheck(const UniPoly& f, const UniPoly& g, Region region, int grid,
                                  std::uint64_t seed) {
  if (f.isZero()) throw std::invalid_argument("ratio check needs non-zero numerator");
  if (g.isZero()) throw std::invalid_argument("ratio check: g identically zero");
  if (!isRealPoly(f) || !isRealPoly(g))
    throw std::invalid_argument("ratio criteria require real coefficients");
  if (grid < 1) throw std::invalid_argument("grid must be positive");

  auto gScaleAt = [&](Complex s) {
    double acc = 0.0, zp = 1.0, az = std::abs(s);
    for (int k = 0; k <= g.degree(); ++k) {
      acc += std::abs(g.coeff(k)) * zp;
      zp *= az;
    }
    return acc;
  };

  RatioCheckResult out;
  auto violates = [&](Complex w) {
    double slack = kBoundaryTol * (1.0 + std::abs(w));
    switch (region) {
      case Region::SlitPlane:
        return std::abs(w.imag()) <= slack && w.real() < -slack;
      case Region::ClosedRHP:
      case Region::OpenRHP:
        return w.real() < -slack;
      case Region::Quadrant1:
        return w.real() < -slack || w.imag() < -slack;
    }
    return false;
  };
  auto probe = [&](Complex sigma) {
    Complex gv = evalAt(g, sigma);
    if (std::abs(gv) <= kRatioPoleSkipRel * gScaleAt(sigma)) return true;
    Complex w = evalAt(f, sigma) / gv;
    if (violates(w)) {
      out.holds = false;
      out.counterexample = sigma;
      out.image = w;
      return false;
    }
    return true;
  };

  for (int ir = 0; ir < grid; ++ir) {
    double rad = std::pow(10.0, -3.0 + 6.0 * ir / std::max(1, grid - 1));
    for (int ia = 0; ia < grid; ++ia) {
      double ang = 1.5707963267948966 * (ia + 0.5) / grid;
      if (!probe(rad * Complex(std::cos(ang), std::sin(ang)))) return out;
    }
  }
  Rng rng(Rng::mix(seed, 0x71756164));
  for (int k = 0; k < grid; ++k) {
    double rad = rng.logUniform(1e-3, 1e3);
    double ang = rng.uniform(1e-6, 1.5707963267948966 - 1e-6);
    if (!probe(rad * Complex(std::cos(ang), std::sin(ang)))) return out;
  }
  return out;
}

RelationVerdict hermiteBiehlerCheck(const MultiPoly& f, const SamplerConfig& cfg) {
  if (f.isZero()) throw std::invalid_argument("Hermite-Biehler check needs non-zero input");
  auto [even, odd] = evenOddParts(f);
  if (odd.isZero() || even.isZero()) {
    RelationVerdict out = fromDecide(decide(f, cfg), "join", "degenerate parity split");
    return out;
  }
  return checkRelation(even, odd, Relation::H, cfg);
}

std::vector<ChainEntry> coefficientChainCheck(const MultiPoly& F, int j,
                                              const SamplerConfig& cfg) {
  int n = F.degreeIn(j);
  std::vector<MultiPoly> slices;
  slices.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) slices.push_back(coefficientSlice(F, j, k));

  std::vector<ChainEntry> out;
  auto pushPair = [&](int lo, int hi, Relation rel) {
    const MultiPoly& a = slices[static_cast<std::size_t>(lo)];
    const MultiPoly& b = slices[static_cast<std::size_t>(hi)];
    if (a.isZero() && b.isZero()) return;  // skipped per the chain's proviso
    ChainEntry e;
    e.lo = lo;
    e.hi = hi;
    e.rel = rel;
    if (a.isZero() || b.isZero()) {
      // 0 <=H g (or f <=H 0) reduces to stability of the non-zero side.
      e.verdict = fromDecide(decide(a.isZero() ? b : a, cfg), "join", "one slice is zero");
    } else {
      e.verdict = checkRelation(a, b, rel, cfg);
    }
    out.push_back(std::move(e));
  };

  for (int i = 0; i + 1 <= n; ++i) pushPair(i, i + 1, Relation::H);
  for (int k = 0; k + 2 <= n; ++k) pushPair(k, k + 2, Relation::Hsim);
  return out;
}

}  // namespace stablepoly
