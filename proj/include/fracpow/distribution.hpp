#pragma once

#include <cstdint>
#include <vector>

#include "fracpow/params.hpp"
#include "fracpow/series.hpp"

namespace fracpow {

/// Density of mu_{x,y}, the law with Laplace transform
/// (1 - r + r e^z)^x (lambda / (lambda - z))^y. Zero for t <= 0. The value
/// is negative when (x, y) is not a member; that is the membership signal,
/// not an error.
double density(double t, const MixtureParams& params, const PowerPair& power);

/// density with the saturation flag and roundoff bound exposed.
SeriesValue evaluate_density(double t, const MixtureParams& params, const PowerPair& power,
                             double abs_tol = 1e-12);

/// Density at t = base + offset, offset in [0, 1], keeping t - base exact.
SeriesValue density_at(std::int64_t base, double offset, const MixtureParams& params,
                       const PowerPair& power, double abs_tol = 1e-12);

/// Partial sum f_n(t) over k = 0..n. density(t) == density_partial(t, floor(t)).
double density_partial(double t, std::int64_t n, const MixtureParams& params,
                       const PowerPair& power);

/// F(t) = sum_{k < t} C(x,k) r^k (1-r)^{x-k} P(y, lambda (t - k)).
/// Throws MembershipError when (x, y) is not a member.
double cdf(double t, const MixtureParams& params, const PowerPair& power);

/// Smallest t with F(t) >= u, by doubling then bisection to width 1e-12.
double quantile(double u, const MixtureParams& params, const PowerPair& power);

/// (1 - r + r e^z)^x (lambda / (lambda - z))^y for z < lambda.
double laplace_transform(double z, const MixtureParams& params, const PowerPair& power);

/// ln of laplace_transform, finite wherever the transform is.
double log_laplace_transform(double z, const MixtureParams& params, const PowerPair& power);

struct Cumulants {
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = x r + y / lambda, variance = x r (1 - r) + y / lambda^2.
Cumulants cumulants(const MixtureParams& params, const PowerPair& power);

/// n draws, deterministic in profile.seed. Integer x: Binomial(x, r) plus an
/// independent Gamma(y, lambda). Otherwise inverse-CDF through quantile.
std::vector<double> sample(std::size_t n, const MixtureParams& params, const PowerPair& power,
                           const EvalProfile& profile);

/// max(50, 10 (x + y / lambda)).
double default_horizon(const MixtureParams& params, const PowerPair& power);

}  // namespace fracpow
