#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace stablepoly {

// Deterministic splitmix64 generator. Every randomized routine in the library
// draws through this type from an explicit seed, so a (seed, stream) pair
// reproduces the same values on any platform, independent of the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stable derivation of per-trial substreams from a base seed.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double logUniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // Standard normal via Box-Muller (no spare caching, keeps streams simple).
  double normal() {
    double u = 1.0 - uniform01();  // avoid log(0)
    double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  bool coin(double p = 0.5) { return uniform01() < p; }

  std::complex<double> complexInDisk(double radius) {
    double r = radius * std::sqrt(uniform01());
    double t = uniform(0.0, 6.283185307179586476925286766559);
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Right-half-plane sample: log-uniform real part, uniform imaginary part.
  std::complex<double> rhpPoint(double realFloor, double radius) {
    return {logUniform(realFloor, radius), uniform(-radius, radius)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace stablepoly
