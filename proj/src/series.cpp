#include "fracpow/series.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "fracpow/errors.hpp"
#include "fracpow/kahan.hpp"
#include "fracpow/specfun.hpp"

namespace fracpow {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kLogMax = std::log(DBL_MAX);
const double kLogCertify = std::log(1e3);

}  // namespace

bool SeriesValue::certified_negative(double abs_tol) const {
  if (value.sign >= 0) return false;
  if (as_double < -abs_tol) return true;
  return value.logmag > log_roundoff + kLogCertify;
}

DensitySeries::DensitySeries(const MixtureParams& params, const PowerPair& power,
                             std::int64_t max_index, double abs_tol)
    : params_(params),
      power_(power),
      max_index_(std::max<std::int64_t>(max_index, -1)),
      abs_tol_(abs_tol) {
  log_prefactor_ = power.y * std::log(params.lambda) + power.x * std::log1p(-params.r) -
                   log_gamma(power.y);
  pairwise_ = params.big_r <= 1.0 && !power.is_integer_x;
  cutoff_allowed_ = pairwise_ && power.y >= 1.0;

  const auto count = static_cast<std::size_t>(max_index_ + 1);
  log_coeff_.reserve(count);
  sign_.reserve(count);
  BinomialCoefficients binomial(power.x);
  for (std::size_t k = 0; k < count; ++k) {
    const SignedLogValue c = binomial.current();
    sign_.push_back(c.sign);
    log_coeff_.push_back(c.sign == 0 ? -INFINITY
                                     : c.logmag + static_cast<double>(k) * params.log_rho);
    binomial.advance();
  }
}

double DensitySeries::log_term(std::int64_t k, std::int64_t base, double offset) const {
  const double dt = static_cast<double>(base - k) + offset;
  double lt = log_prefactor_ + log_coeff_[static_cast<std::size_t>(k)] - params_.lambda * dt;
  // (t-k)^0 := 1 for t > k.
  if (power_.y != 1.0) lt += (power_.y - 1.0) * std::log(dt);
  return lt;
}

SignedLogValue DensitySeries::term(std::int64_t k, std::int64_t base, double offset) const {
  if (k < 0 || k > max_index_) return SignedLogValue::zero();
  if (static_cast<double>(base - k) + offset <= 0.0) return SignedLogValue::zero();
  const int s = sign_[static_cast<std::size_t>(k)];
  if (s == 0) return SignedLogValue::zero();
  return {s, log_term(k, base, offset)};
}

SignedLogValue DensitySeries::coefficient(std::int64_t k) const {
  if (k < 0 || k > max_index_) {
    throw DomainError("DensitySeries::coefficient: index beyond precomputed range");
  }
  const auto i = static_cast<std::size_t>(k);
  if (sign_[i] == 0) return SignedLogValue::zero();
  return {sign_[i], log_coeff_[i] + params_.lambda * static_cast<double>(k)};
}

SeriesValue DensitySeries::evaluate(std::int64_t base, double offset, std::int64_t n) const {
  if (std::isnan(offset) || offset < 0.0 || offset > 1.0) {
    throw DomainError("DensitySeries::evaluate: offset must lie in [0, 1]");
  }
  SeriesValue out;
  std::int64_t last = offset > 0.0 ? base : base - 1;
  last = std::min({last, n, max_index_});
  if (last < 0) return out;

  thread_local std::vector<double> logs;
  logs.clear();
  const double log_cut = std::log(abs_tol_ * 1e-3);
  double top = -INFINITY;
  for (std::int64_t k = 0; k <= last; ++k) {
    if (sign_[static_cast<std::size_t>(k)] == 0) break;  // integer x: all later terms vanish
    const double lt = log_term(k, base, offset);
    // Alternating, decreasing tail (R <= 1, y >= 1, k >= k0): the remainder
    // is bounded by the first dropped term.
    if (cutoff_allowed_ && k >= power_.k0 && lt < log_cut) break;
    logs.push_back(lt);
    top = std::max(top, lt);
  }
  if (logs.empty()) return out;

  KahanAccumulator acc;
  double bound = 0.0;
  const std::size_t count = logs.size();
  const auto k0 = static_cast<std::size_t>(power_.k0);
  std::size_t k = 0;
  while (k < count) {
    const double s = sign_[k] * std::exp(logs[k] - top);
    bound += std::fabs(s) * (16.0 + 4.0 * std::fabs(logs[k]));
    if (pairwise_ && k >= k0 && k + 1 < count) {
      const double s_next = sign_[k + 1] * std::exp(logs[k + 1] - top);
      bound += std::fabs(s_next) * (16.0 + 4.0 * std::fabs(logs[k + 1]));
      acc.add(s + s_next);
      k += 2;
    } else {
      acc.add(s);
      ++k;
    }
  }

  out.terms = count;
  out.log_roundoff = std::log(bound * kEps) + top;
  const double sum = acc.value();
  if (sum == 0.0) return out;
  out.value = {sum > 0.0 ? 1 : -1, std::log(std::fabs(sum)) + top};
  if (out.value.logmag > kLogMax) {
    out.saturated = true;
    out.as_double = out.value.sign * DBL_MAX;
  } else if (top > -700.0 && top < 700.0) {
    out.as_double = sum * std::exp(top);
  } else {
    out.as_double = out.value.to_double();
  }
  return out;
}

}  // namespace fracpow
