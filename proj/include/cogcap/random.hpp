#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace cogcap {

// Reproducible variate source for every simulation in the project.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard,
// seeded through one SplitMix64 step so that nearby seeds give unrelated
// streams. Uniforms take the top 53 bits of each draw. Gaussians use the basic
// Box-Muller transform on two uniforms, emitting the cosine branch first and
// caching the sine branch. Nothing here depends on the standard library's
// implementation-defined distribution classes, so traces are bit-identical
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Uniform on the open interval (0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  double gaussian();
  double gaussian(double variance);
  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_gaussian(double variance);

  // Independent child stream, e.g. one per shard or per trial.
  Rng derive(std::uint64_t stream) const;

  static std::uint64_t splitmix64(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace cogcap
