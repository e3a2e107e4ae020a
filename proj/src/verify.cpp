#include "fracpow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fracpow/distribution.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/jorgensen.hpp"
#include "fracpow/quadrature.hpp"
#include "fracpow/random.hpp"
#include "fracpow/series.hpp"
#include "fracpow/specfun.hpp"

namespace fracpow {

namespace {

constexpr double kMaxCheckHorizon = 1e5;

void require_member(const MixtureParams& params, const PowerPair& power, const char* check) {
  if (!classify(params, power).member) {
    throw MembershipError(std::string(check) + ": (x, y) is not a member; oracle undefined");
  }
}

std::string note(double horizon, double tail, std::uint64_t subdivisions) {
  std::ostringstream os;
  os << "horizon=" << horizon << " tail_bound=" << tail << " subdivisions=" << subdivisions;
  return os.str();
}

}  // namespace

std::string OracleReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["check_name"] = check_name;
  j["computed"] = computed;
  j["reference"] = reference;
  j["tolerance"] = tolerance;
  j["tolerance_kind"] = kind == ToleranceKind::Absolute ? "absolute" : "relative";
  j["passed"] = passed;
  j["runtime_note"] = runtime_note;
  return j.dump();
}

OracleReport make_report(std::string name, double computed, double reference, double tolerance,
                         ToleranceKind kind, std::string note_text) {
  OracleReport r;
  r.check_name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.tolerance = tolerance;
  r.kind = kind;
  const double scale = kind == ToleranceKind::Relative ? std::fabs(reference) : 1.0;
  r.passed = std::fabs(computed - reference) <= tolerance * scale;
  r.runtime_note = std::move(note_text);
  return r;
}

double density_tail_bound(const MixtureParams& params, const PowerPair& power, double z,
                          int moment, double horizon) {
  if (!(z < params.lambda)) throw DomainError("density_tail_bound: z must be below lambda");
  if (moment > 0) {
    // t^j <= (j / (e delta))^j e^{delta t}.
    const double delta = 0.5 * (params.lambda - z);
    const double j = moment;
    const double factor = std::pow(j / (std::numbers::e * delta), j);
    return factor * density_tail_bound(params, power, z + delta, 0, horizon);
  }
  const double rate = params.lambda - z;
  const double log_scale =
      power.x * std::log1p(-params.r) + power.y * (std::log(params.lambda) - std::log(rate));
  const double log_q = params.log_rho + z;
  double total = 0.0;
  BinomialCoefficients binomial(power.x);
  std::int64_t k = 0;
  for (; static_cast<double>(k) < horizon; ++k, binomial.advance()) {
    const SignedLogValue c = binomial.current();
    if (c.is_zero()) return total;
    const double tail = reg_upper_gamma(power.y, rate * (horizon - static_cast<double>(k)));
    if (tail == 0.0) continue;
    total += std::exp(c.logmag + static_cast<double>(k) * log_q + log_scale + std::log(tail));
  }
  // Terms with k >= horizon contribute their whole mass.
  for (;; ++k, binomial.advance()) {
    const SignedLogValue c = binomial.current();
    if (c.is_zero()) return total;
    const double w = std::exp(c.logmag + static_cast<double>(k) * log_q + log_scale);
    if (static_cast<double>(k) > power.x) {
      if (log_q >= 0.0) return INFINITY;
      return total + w / (1.0 - std::exp(log_q));
    }
    total += w;
  }
}

DensityIntegral integrate_density(const MixtureParams& params, const PowerPair& power, double z,
                                  int moment, double center, double quad_tol, double tail_target,
                                  const EvalProfile& profile) {
  profile.validate();
  const double tail_z_bound_center = std::max(0.0, center);
  double horizon = std::ceil(profile.horizon_T.value_or(default_horizon(params, power)));
  auto tail_at = [&](double T) {
    double bound = density_tail_bound(params, power, z, moment, T);
    if (moment == 2 && tail_z_bound_center > 0.0) {
      // (t - c)^2 <= t^2 + c^2 for t, c >= 0.
      bound += tail_z_bound_center * tail_z_bound_center *
               density_tail_bound(params, power, z, 0, T);
    }
    return bound;
  };
  double tail = tail_at(horizon);
  while (!(tail <= tail_target)) {
    horizon = std::ceil(1.25 * horizon) + 1.0;
    if (horizon > kMaxCheckHorizon) {
      throw BudgetError("integrate_density: tail bound does not fall below target");
    }
    tail = tail_at(horizon);
  }

  const auto panels = static_cast<std::int64_t>(horizon);
  // abs_tol = 0 disables the series cutoff, which is calibrated for
  // untilted density values.
  const DensitySeries series(params, power, panels + 1, 0.0);
  const auto integrand = [&](std::int64_t m, double s) -> double {
    const SeriesValue v = series.evaluate(m, s);
    if (v.value.is_zero()) return 0.0;
    const double t = static_cast<double>(m) + s;
    double log_value = v.value.logmag + z * t;
    int sign = v.value.sign;
    if (moment > 0) {
      const double w = t - center;
      if (w == 0.0) return 0.0;
      log_value += moment * std::log(std::fabs(w));
      if (w < 0.0 && moment % 2 == 1) sign = -sign;
    }
    return sign * std::exp(log_value);
  };
  SubdivisionBudget budget(profile.quad_budget);
  const QuadratureResult q =
      integrate_unit_panels(integrand, panels, power.y - 1.0, quad_tol, budget);
  return {q.value, tail, horizon, q.subdivisions};
}

OracleReport check_normalization(const MixtureParams& params, const PowerPair& power,
                                 const EvalProfile& profile) {
  require_member(params, power, "check_normalization");
  const DensityIntegral I = integrate_density(params, power, 0.0, 0, 0.0, 1e-10, 1e-10, profile);
  return make_report("normalization", I.value, 1.0, 1e-8 + I.tail_bound,
                     ToleranceKind::Absolute, note(I.horizon, I.tail_bound, I.subdivisions));
}

std::vector<OracleReport> check_transform(const MixtureParams& params, const PowerPair& power,
                                          std::span<const double> z_grid,
                                          const EvalProfile& profile) {
  for (double z : z_grid) {
    if (!(z < params.lambda)) {
      throw DomainError("check_transform: z must be below lambda (outside the Laplace domain)");
    }
  }
  require_member(params, power, "check_transform");
  std::vector<OracleReport> out;
  for (double z : z_grid) {
    const double reference = laplace_transform(z, params, power);
    const DensityIntegral I = integrate_density(params, power, z, 0, 0.0, 1e-8 * reference,
                                                1e-8 * reference, profile);
    std::ostringstream name;
    name << "transform[z=" << z << "]";
    out.push_back(make_report(name.str(), I.value, reference, 1e-6, ToleranceKind::Relative,
                              note(I.horizon, I.tail_bound, I.subdivisions)));
  }
  return out;
}

std::vector<OracleReport> check_moments(const MixtureParams& params, const PowerPair& power,
                                        const EvalProfile& profile) {
  require_member(params, power, "check_moments");
  const Cumulants c = cumulants(params, power);
  std::vector<OracleReport> out;

  const DensityIntegral m1 =
      integrate_density(params, power, 0.0, 1, 0.0, 1e-9 * c.mean, 1e-9 * c.mean, profile);
  const DensityIntegral m2 = integrate_density(params, power, 0.0, 2, m1.value,
                                               1e-9 * c.variance, 1e-9 * c.variance, profile);
  out.push_back(make_report("moments.mean.quadrature", m1.value, c.mean, 1e-6,
                            ToleranceKind::Relative,
                            note(m1.horizon, m1.tail_bound, m1.subdivisions)));
  out.push_back(make_report("moments.variance.quadrature", m2.value, c.variance, 1e-6,
                            ToleranceKind::Relative,
                            note(m2.horizon, m2.tail_bound, m2.subdivisions)));

  const double h = std::min(1e-5, 0.1 * params.lambda);
  const double up = log_laplace_transform(h, params, power);
  const double mid = log_laplace_transform(0.0, params, power);
  const double down = log_laplace_transform(-h, params, power);
  const double mean_fd = (up - down) / (2.0 * h);
  const double var_fd = (up - 2.0 * mid + down) / (h * h);
  std::ostringstream step;
  step << "central difference of log transform, h=" << h;
  out.push_back(make_report("moments.mean.finite_difference", mean_fd, c.mean, 1e-6,
                            ToleranceKind::Relative, step.str()));
  out.push_back(make_report("moments.variance.finite_difference", var_fd, c.variance, 1e-6,
                            ToleranceKind::Relative, step.str()));
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf_fn) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf_fn(samples[i]);
    const double i_d = static_cast<double>(i);
    d = std::max({d, f - i_d / n, (i_d + 1.0) / n - f});
  }
  return d;
}

OracleReport check_sampling(const MixtureParams& params, const PowerPair& power, std::size_t n,
                            const EvalProfile& profile) {
  if (n < 10000) throw DomainError("check_sampling: n must be at least 10^4");
  require_member(params, power, "check_sampling");
  EvalProfile stream = profile;
  stream.seed = derive_seed(profile.seed, "check_sampling");
  const std::vector<double> draws = sample(n, params, power, stream);
  const double d =
      ks_statistic(draws, [&](double t) { return cdf(t, params, power); });
  const double threshold = 1.36 * 1.5 / std::sqrt(static_cast<double>(n));
  std::ostringstream os;
  os << "n=" << n << " stream_seed=" << stream.seed;
  return make_report("sampling.ks", d, 0.0, threshold, ToleranceKind::Absolute, os.str());
}

std::vector<OracleReport> run_oracle_suite(const MixtureParams& params, const PowerPair& power,
                                           std::size_t sample_count, const EvalProfile& profile) {
  const double lambda = params.lambda;
  const std::vector<double> z_grid = {-2.0, -1.0, -0.5, 0.0, 0.5 * lambda, 0.9 * lambda};
  auto normalization = std::async(std::launch::async,
                                  [&] { return check_normalization(params, power, profile); });
  auto transform = std::async(std::launch::async,
                              [&] { return check_transform(params, power, z_grid, profile); });
  auto moments =
      std::async(std::launch::async, [&] { return check_moments(params, power, profile); });
  auto sampling = std::async(std::launch::async, [&] {
    return check_sampling(params, power, sample_count, profile);
  });
  std::vector<OracleReport> out;
  out.push_back(normalization.get());
  for (auto& r : transform.get()) out.push_back(std::move(r));
  for (auto& r : moments.get()) out.push_back(std::move(r));
  out.push_back(sampling.get());
  return out;
}

}  // namespace fracpow
