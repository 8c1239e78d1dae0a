#include "stablepoly/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stablepoly/errors.hpp"
#include "stablepoly/parse.hpp"
#include "stablepoly/rng.hpp"
#include "stablepoly/roots.hpp"

namespace stablepoly {

namespace {

constexpr double kWitnessValueRel = 1e-8;
constexpr double kWitnessInteriorMargin = 1e-10;
constexpr double kArgSpreadTol = 1e-8;
constexpr double kArgNoiseFloorRel = 1e-6;

// sum_a |c_a| prod_j |w_j|^(a_j): the natural magnitude scale of f at w.
double coefficientScaleAt(const MultiPoly& f, const std::vector<Complex>& w) {
  double scale = 0.0;
  for (const auto& [exp, c] : f.terms()) {
    double t = std::abs(c);
    for (std::size_t k = 0; k < exp.size(); ++k)
      for (int e = 0; e < exp[k]; ++e) t *= std::abs(w[k]);
    scale += t;
  }
  return std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace

const char* toString(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::ProductAffine: return "product_affine";
    case CertificateKind::DetPencilSkew: return "det_pencil_skew";
    case CertificateKind::DetPencilImag: return "det_pencil_imag";
    case CertificateKind::ClosureDerived: return "closure_derived";
  }
  return "unknown";
}

nlohmann::json toJson(const StabilityVerdict& v) {
  if (const auto* u = std::get_if<Unstable>(&v)) {
    nlohmann::json w = nlohmann::json::array();
    for (Complex c : u->witness) w.push_back({{"re", c.real()}, {"im", c.imag()}});
    return {{"verdict", "unstable"},
            {"witness", w},
            {"value", {{"re", u->value.real()}, {"im", u->value.imag()}}},
            {"reason", u->reason}};
  }
  if (const auto* p = std::get_if<ProbablyStable>(&v))
    return {{"verdict", "probably_stable"},
            {"trials", p->trials},
            {"seed", p->seed},
            {"min_margin", p->minMargin}};
  return {{"verdict", "stable_by_certificate"},
          {"kind", toString(std::get<StableByCertificate>(v).kind)}};
}

bool witnessIsValid(const MultiPoly& f, const std::vector<Complex>& witness) {
  if (static_cast<int>(witness.size()) != f.nvars()) return false;
  for (Complex c : witness)
    if (!(c.real() > 0.0)) return false;
  double val = std::abs(evalAt(f, witness));
  return val < kWitnessValueRel * coefficientScaleAt(f, witness);
}

BatteryResult necessaryBattery(const MultiPoly& f) {
  if (f.isZero()) throw std::invalid_argument("battery needs a non-zero polynomial");
  BatteryResult r;

  // Real coefficients must share one sign.
  if (f.isRealCoeff()) {
    bool pos = false, neg = false;
    for (const auto& [exp, c] : f.terms()) (c.real() > 0.0 ? pos : neg) = true;
    if (pos && neg) {
      r.pass = false;
      r.reason = "real coefficients of mixed sign";
      return r;
    }
  }

  // Top-homogeneous coefficients must share one argument. Coefficients near
  // the noise floor carry unreliable arguments and are skipped.
  MultiPoly top = topHomogeneous(f);
  double maxAbs = top.maxAbsCoeff();
  Complex ref(0.0);
  for (const auto& [exp, c] : top.terms())
    if (std::abs(c) == maxAbs) {
      ref = c;
      break;
    }
  for (const auto& [exp, c] : top.terms()) {
    if (std::abs(c) < kArgNoiseFloorRel * maxAbs) continue;
    double ang = std::abs(std::arg(c * std::conj(ref)));
    if (ang > kArgSpreadTol) {
      r.pass = false;
      r.reason = "top-homogeneous coefficients have unequal arguments";
      return r;
    }
  }

  // Diagonal restriction f(x,...,x) must be Hurwitz stable (or f is not).
  if (f.nvars() >= 1) {
    std::vector<Complex> base(static_cast<std::size_t>(f.nvars()), Complex(0.0));
    std::vector<double> dir(static_cast<std::size_t>(f.nvars()), 1.0);
    UniPoly diag = restrictLine(f, base, dir);
    if (diag.isZero()) {
      r.pass = false;
      r.reason = "diagonal restriction is identically zero";
      return r;
    }
    if (diag.degree() >= 1) {
      HurwitzVerdict hv = hurwitzVerdict(diag, 1e-6);
      if (!hv.stable) {
        r.pass = false;
        r.reason = "diagonal restriction has a right-half-plane root";
        r.diagonalRoot = hv.worstRoot;
        return r;
      }
    }
  }
  return r;
}

namespace {

// Damped Newton polish of a restriction root; returns the improved root.
Complex polishRoot(const UniPoly& g, Complex z, int steps) {
  auto value = [&](Complex x) { return std::abs(evalAt(g, x)); };
  UniPoly dg = derivative(g);
  double best = value(z);
  for (int it = 0; it < steps; ++it) {
    Complex dv = evalAt(dg, z);
    if (dv == Complex(0.0)) break;
    Complex step = evalAt(g, z) / dv;
    double lambda = 1.0;
    bool moved = false;
    for (int h = 0; h < 8; ++h) {
      Complex cand = z - lambda * step;
      double fv = value(cand);
      if (fv < best) {
        z = cand;
        best = fv;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) break;
  }
  return z;
}

struct TrialDraw {
  int freeVar = 0;
  std::vector<Complex> values;  // full point; slot freeVar meaningful only as placeholder
};

TrialDraw drawTrial(const MultiPoly& f, const SamplerConfig& cfg, Rng& rng) {
  TrialDraw t;
  int d = f.nvars();
  t.freeVar = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
  t.values.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k)
    t.values[static_cast<std::size_t>(k)] = rng.rhpPoint(cfg.realFloor, cfg.radius);
  return t;
}

}  // namespace

StabilityVerdict refuteMonteCarlo(const MultiPoly& f, const SamplerConfig& cfg) {
  if (f.isZero()) throw std::invalid_argument("refuter needs a non-zero polynomial");
  const int d = f.nvars();
  double minMargin = std::numeric_limits<double>::infinity();

  if (d == 0 || f.totalDegree() == 0)
    return ProbablyStable{cfg.trials, cfg.seed, minMargin};

  const int trials = d == 1 ? 1 : cfg.trials;  // one fiber in one variable
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(Rng::mix(cfg.seed, static_cast<std::uint64_t>(trial)));

    UniPoly g;
    std::vector<Complex> point;
    int freeVar = 0;
    std::vector<Complex> lineBase;
    std::vector<double> lineDir;
    bool alongLine = false;

    bool degenerate = false;
    for (int redraw = 0; redraw < 8; ++redraw) {
      if (d == 1) {
        g = toUniPoly(f);
        point = {Complex(1.0, 0.0)};
      } else if (cfg.fullLines && d >= 2) {
        alongLine = true;
        lineBase.assign(static_cast<std::size_t>(d), Complex(0.0));
        lineDir.assign(static_cast<std::size_t>(d), 0.0);
        for (int k = 0; k < d; ++k) {
          lineBase[static_cast<std::size_t>(k)] = Complex(0.0, rng.uniform(-cfg.radius, cfg.radius));
          lineDir[static_cast<std::size_t>(k)] = rng.logUniform(cfg.realFloor, cfg.radius);
        }
        g = restrictLine(f, lineBase, lineDir);
        point = lineBase;
      } else {
        TrialDraw t = drawTrial(f, cfg, rng);
        freeVar = t.freeVar;
        point = t.values;
        g = restrictToVariable(f, freeVar, point);
      }

      double gScale = maxAbsCoeff(g);
      if (gScale > 1e-250 * f.maxAbsCoeff()) {
        degenerate = false;
        break;
      }
      // Restriction vanished identically. That is itself a zero of f at an
      // all-RHP point if the evaluation is exactly zero; otherwise redraw.
      degenerate = true;
      std::vector<Complex> probe = point;
      if (!alongLine) probe[static_cast<std::size_t>(freeVar)] = Complex(1.0, 0.0);
      if (std::abs(evalAt(f, probe)) == 0.0 && witnessIsValid(f, probe))
        return Unstable{probe, evalAt(f, probe), "identically zero restriction"};
    }
    if (degenerate) continue;

    if (g.degree() < 1) {
      minMargin = std::min(minMargin, std::numeric_limits<double>::infinity());
      continue;
    }

    RootSet rs;
    try {
      rs = allRoots(g, 1e-7, Rng::mix(cfg.seed, 0x5eedULL + static_cast<std::uint64_t>(trial)));
    } catch (const NumericalError&) {
      continue;  // treat as an uninformative trial
    }

    double maxRe = -std::numeric_limits<double>::infinity();
    for (Complex r : rs.roots) maxRe = std::max(maxRe, r.real());
    minMargin = std::min(minMargin, -maxRe);

    if (maxRe <= cfg.tol) continue;
    for (Complex root : rs.roots) {
      if (root.real() <= cfg.tol) continue;
      Complex z = polishRoot(g, root, cfg.polishSteps);
      std::vector<Complex> w;
      if (alongLine) {
        w.resize(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
          w[static_cast<std::size_t>(k)] =
              lineBase[static_cast<std::size_t>(k)] + z * lineDir[static_cast<std::size_t>(k)];
        if (!(z.real() > kWitnessInteriorMargin)) continue;
      } else {
        w = point;
        w[static_cast<std::size_t>(d == 1 ? 0 : freeVar)] = z;
      }
      bool interior = true;
      for (Complex c : w) interior = interior && c.real() > kWitnessInteriorMargin;
      if (!interior) continue;
      if (witnessIsValid(f, w)) return Unstable{w, evalAt(f, w), "restriction root"};
    }
  }
  return ProbablyStable{trials, cfg.seed, minMargin};
}

StabilityVerdict decide(const MultiPoly& f, const SamplerConfig& cfg,
                        std::optional<CertificateKind> certificate) {
  if (f.isZero())
    return Unstable{std::vector<Complex>(static_cast<std::size_t>(f.nvars()), Complex(1.0)),
                    Complex(0.0), "zero polynomial"};

  BatteryResult battery = necessaryBattery(f);
  if (!battery.pass) {
    if (battery.diagonalRoot) {
      std::vector<Complex> w(static_cast<std::size_t>(f.nvars()), *battery.diagonalRoot);
      if (witnessIsValid(f, w)) return Unstable{w, evalAt(f, w), battery.reason};
    }
    StabilityVerdict mc = refuteMonteCarlo(f, cfg);
    if (const auto* u = std::get_if<Unstable>(&mc))
      return Unstable{u->witness, u->value, battery.reason};
    return Unstable{{}, Complex(0.0), battery.reason};
  }
  if (certificate) return StableByCertificate{*certificate};
  return refuteMonteCarlo(f, cfg);
}

MultiPoly joinWithFreshVar(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars() != g.nvars())
    throw std::invalid_argument("join requires equal variable counts");
  int d = f.nvars();
  MultiPoly r(d + 1);
  for (const auto& [exp, c] : f.terms()) {
    ExpVec e = exp;
    e.push_back(0);
    r.addTerm(e, c);
  }
  for (const auto& [exp, c] : g.terms()) {
    ExpVec e = exp;
    e.push_back(1);
    r.addTerm(e, c);
  }
  return r;
}

}  // namespace stablepoly
