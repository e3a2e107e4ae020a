#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fracpow {

/// Seeded generator with variates defined here rather than by the standard
/// library distributions, so streams are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 is boosted through
  /// Gamma(shape + 1) * U^{1/shape}.
  double gamma(double shape);
  /// Binomial(trials, p) by sequential inversion of the pmf.
  std::uint64_t binomial(std::uint64_t trials, double p);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t value);

/// Independent stream seed for (seed, name), e.g. one per oracle check.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

/// Independent stream seed for (seed, index), for seed-splitting.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace fracpow
