#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace scd {

/// Seeded generator. Never shared between workers: each chunk of work
/// gets its own instance from derive_seed(master, stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
  /// Standard complex Gaussian: real and imaginary parts each N(0, 1).
  std::complex<double> complex_normal() {
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {re, im};
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// splitmix64 finalizer over (master, stream); decorrelates adjacent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace scd
