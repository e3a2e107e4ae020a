#include "fracpow/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracpow/errors.hpp"
#include "fracpow/jorgensen.hpp"
#include "fracpow/kahan.hpp"
#include "fracpow/random.hpp"
#include "fracpow/specfun.hpp"

namespace fracpow {

MixtureParams MixtureParams::make(double r, double lambda) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("r must lie in (0, 1), got " + std::to_string(r));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive and finite, got " + std::to_string(lambda));
  }
  MixtureParams p;
  p.r = r;
  p.lambda = lambda;
  p.big_r = r / (1.0 - r) * std::exp(lambda);
  p.log_rho = std::log(r) - std::log1p(-r);
  return p;
}

PowerPair PowerPair::make(double x, double y) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("x must be positive and finite, got " + std::to_string(x));
  }
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("y must be positive and finite, got " + std::to_string(y));
  }
  PowerPair pw;
  pw.y = y;
  pw.is_integer_x = is_integral(x);
  pw.x = pw.is_integer_x ? std::round(x) : x;
  pw.k0 = static_cast<std::int64_t>(std::floor(pw.x)) + 1;
  return pw;
}

void EvalProfile::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (quad_budget < 64) throw DomainError("quad_budget must be at least 64");
  if (horizon_T && !(*horizon_T > 0.0 && std::isfinite(*horizon_T))) {
    throw DomainError("horizon_T must be positive and finite");
  }
}

namespace {

void check_time(double t) {
  if (std::isnan(t) || std::isinf(t)) throw DomainError("time must be finite");
}

void require_member(const MixtureParams& params, const PowerPair& power, const char* op) {
  if (!classify(params, power).member) {
    throw MembershipError(std::string(op) + ": (x, y) = (" + std::to_string(power.x) + ", " +
                          std::to_string(power.y) + ") is not in the Jorgensen set for R = " +
                          std::to_string(params.big_r));
  }
}

std::int64_t floor_index(double t) { return static_cast<std::int64_t>(std::floor(t)); }

}  // namespace

SeriesValue density_at(std::int64_t base, double offset, const MixtureParams& params,
                       const PowerPair& power, double abs_tol) {
  const DensitySeries series(params, power, base, abs_tol);
  return series.evaluate(base, offset, base);
}

SeriesValue evaluate_density(double t, const MixtureParams& params, const PowerPair& power,
                             double abs_tol) {
  check_time(t);
  if (t <= 0.0) return {};
  const std::int64_t base = floor_index(t);
  return density_at(base, t - static_cast<double>(base), params, power, abs_tol);
}

double density(double t, const MixtureParams& params, const PowerPair& power) {
  return evaluate_density(t, params, power).as_double;
}

double density_partial(double t, std::int64_t n, const MixtureParams& params,
                       const PowerPair& power) {
  check_time(t);
  if (n < 0) throw DomainError("density_partial: n must be nonnegative");
  if (t <= 0.0) return 0.0;
  const std::int64_t base = floor_index(t);
  const DensitySeries series(params, power, std::min(n, base));
  return series.evaluate(base, t - static_cast<double>(base), n).as_double;
}

double cdf(double t, const MixtureParams& params, const PowerPair& power) {
  check_time(t);
  require_member(params, power, "cdf");
  if (t <= 0.0) return 0.0;
  const double log_scale = power.x * std::log1p(-params.r);
  const double rho = std::exp(params.log_rho);
  KahanAccumulator acc;
  BinomialCoefficients binomial(power.x);
  for (std::int64_t k = 0; static_cast<double>(k) < t; ++k, binomial.advance()) {
    const SignedLogValue c = binomial.current();
    if (c.is_zero()) break;
    const double log_weight = c.logmag + static_cast<double>(k) * params.log_rho + log_scale;
    const double weight = c.sign * std::exp(log_weight);
    acc.add(weight * reg_lower_gamma(power.y, params.lambda * (t - static_cast<double>(k))));
    // Past x the |C(x,k)| are decreasing, so the rest is below |w| rho / (1 - rho).
    if (rho < 1.0 && static_cast<double>(k) > power.x &&
        std::fabs(weight) * rho / (1.0 - rho) < 1e-18) {
      break;
    }
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

double quantile(double u, const MixtureParams& params, const PowerPair& power) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
  require_member(params, power, "quantile");
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (cdf(hi, params, power) < u) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 64) throw ConvergenceError("quantile: could not bracket u");
  }
  for (int i = 0; i < 200; ++i) {
    if (hi - lo <= 1e-12) return hi;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return hi;
    if (cdf(mid, params, power) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw ConvergenceError("quantile: bisection budget exhausted");
}

double log_laplace_transform(double z, const MixtureParams& params, const PowerPair& power) {
  if (std::isnan(z) || !(z < params.lambda)) {
    throw DomainError("laplace_transform: z must be below lambda (outside the domain)");
  }
  const double bernoulli = power.x * std::log1p(params.r * std::expm1(z));
  const double gamma = -power.y * std::log1p(-z / params.lambda);
  return bernoulli + gamma;
}

double laplace_transform(double z, const MixtureParams& params, const PowerPair& power) {
  return std::exp(log_laplace_transform(z, params, power));
}

Cumulants cumulants(const MixtureParams& params, const PowerPair& power) {
  const double r = params.r;
  const double lambda = params.lambda;
  return {power.x * r + power.y / lambda,
          power.x * r * (1.0 - r) + power.y / (lambda * lambda)};
}

std::vector<double> sample(std::size_t n, const MixtureParams& params, const PowerPair& power,
                           const EvalProfile& profile) {
  if (n == 0) throw DomainError("sample: n must be at least 1");
  require_member(params, power, "sample");
  Rng rng(profile.seed);
  std::vector<double> out;
  out.reserve(n);
  if (power.is_integer_x) {
    const auto trials = static_cast<std::uint64_t>(power.x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto shift = static_cast<double>(rng.binomial(trials, params.r));
      out.push_back(shift + rng.gamma(power.y) / params.lambda);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(rng.uniform(), params, power));
  }
  return out;
}

double default_horizon(const MixtureParams& params, const PowerPair& power) {
  return std::max(50.0, 10.0 * (power.x + power.y / params.lambda));
}

}  // namespace fracpow
