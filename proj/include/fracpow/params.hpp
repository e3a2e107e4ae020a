#pragma once

#include <cstdint>
#include <optional>

namespace fracpow {

/// mu = Bernoulli(r) * Gamma(., lambda). big_r = r / (1 - r) e^lambda decides
/// which clause of the membership theorem applies. The Laplace domain is
/// (-inf, lambda).
struct MixtureParams {
  double r = 0.5;
  double lambda = 1.0;
  double big_r = 0.0;
  /// ln(r / (1 - r)).
  double log_rho = 0.0;

  /// Validates 0 < r < 1 and lambda > 0; throws DomainError otherwise.
  static MixtureParams make(double r, double lambda);
};

/// Exponents (x, y) of the candidate power. k0 is the critical index with
/// k0 - 1 <= x < k0. Integral x (within 1e-12) is snapped to the integer.
struct PowerPair {
  double x = 1.0;
  double y = 1.0;
  std::int64_t k0 = 2;
  bool is_integer_x = true;

  static PowerPair make(double x, double y);
};

/// Numerical policy shared by evaluation, scanning and the oracles.
struct EvalProfile {
  double abs_tol = 1e-12;
  std::uint64_t quad_budget = 4'000'000;
  /// Upper time bound for scans and integrals; unset selects a per-pair default.
  std::optional<double> horizon_T;
  std::uint64_t seed = 20240531;
  /// Upper bound on (points x series terms) for a single positivity scan.
  std::uint64_t scan_work_limit = 4'000'000'000ULL;
  /// Worker threads for grid evaluation; 0 uses hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

}  // namespace fracpow
