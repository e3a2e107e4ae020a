#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracpow/params.hpp"

namespace fracpow {

enum class ToleranceKind { Absolute, Relative };

struct OracleReport {
  std::string check_name;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  ToleranceKind kind = ToleranceKind::Absolute;
  bool passed = false;
  std::string runtime_note;

  /// One JSON object, stable key order, no trailing newline.
  std::string to_json_line() const;
};

/// Builds a report; passed is |computed - reference| <= tolerance, scaled by
/// |reference| for relative checks.
OracleReport make_report(std::string name, double computed, double reference, double tolerance,
                         ToleranceKind kind, std::string note = {});

/// Upper bound on the integral of e^{z t} t^moment |f(t)| over (horizon, inf).
/// Infinite when the series tail cannot be bounded.
double density_tail_bound(const MixtureParams& params, const PowerPair& power, double z,
                          int moment, double horizon);

struct DensityIntegral {
  double value = 0.0;
  double tail_bound = 0.0;
  double horizon = 0.0;
  std::uint64_t subdivisions = 0;
};

/// Quadrature of e^{z t} (t - center)^moment f(t) over (0, T]. T is the
/// smallest horizon >= the profile horizon whose tail bound is below
/// tail_target. Panels break at every integer.
DensityIntegral integrate_density(const MixtureParams& params, const PowerPair& power, double z,
                                  int moment, double center, double quad_tol, double tail_target,
                                  const EvalProfile& profile);

/// Integral of the density against 1; reference 1, absolute tolerance 1e-8
/// plus the analytic tail bound.
OracleReport check_normalization(const MixtureParams& params, const PowerPair& power,
                                 const EvalProfile& profile);

/// Quadrature of e^{zt} f(t) against laplace_transform(z); relative 1e-6.
std::vector<OracleReport> check_transform(const MixtureParams& params, const PowerPair& power,
                                          std::span<const double> z_grid,
                                          const EvalProfile& profile);

/// Quadrature and finite-difference moments against cumulants(); relative 1e-6.
std::vector<OracleReport> check_moments(const MixtureParams& params, const PowerPair& power,
                                        const EvalProfile& profile);

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// samples and cdf.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// KS distance of sample(n) against cdf(); threshold 1.36 * 1.5 / sqrt(n).
/// The sampling stream is derived from (profile.seed, "check_sampling").
OracleReport check_sampling(const MixtureParams& params, const PowerPair& power, std::size_t n,
                            const EvalProfile& profile);

/// All four checks at the default z grid {-2, -1, -0.5, 0, 0.5 lambda, 0.9 lambda}.
std::vector<OracleReport> run_oracle_suite(const MixtureParams& params, const PowerPair& power,
                                           std::size_t sample_count, const EvalProfile& profile);

}  // namespace fracpow
