#pragma once

#include <cstdint>

#include "fracpow/signed_log.hpp"

namespace fracpow {

/// Values within this distance of an integer are treated as that integer.
inline constexpr double kIntegerTolerance = 1e-12;

/// True when |x - round(x)| < kIntegerTolerance.
bool is_integral(double x);

/// ln Gamma(a) for a > 0 (Lanczos approximation, g = 671/128).
/// Throws DomainError for a <= 0 or non-finite a.
double log_gamma(double a);

/// Regularized lower incomplete gamma P(a, s) = gamma(a, s) / Gamma(a).
/// Series for s < a + 1, Lentz continued fraction for the complement
/// otherwise.
double reg_lower_gamma(double a, double s);

/// Regularized upper incomplete gamma Q(a, s) = 1 - P(a, s), computed without
/// subtracting from one on the continued-fraction branch.
double reg_upper_gamma(double a, double s);

/// Successive generalized binomial coefficients C(x, 0), C(x, 1), ...
/// via C(x, k+1) = C(x, k) (x - k) / (k + 1), carried in signed log space.
/// Integral x is snapped first so the factor (x - x) is an exact zero.
class BinomialCoefficients {
 public:
  explicit BinomialCoefficients(double x);

  SignedLogValue current() const { return current_; }
  std::uint64_t index() const { return k_; }
  void advance();

 private:
  double x_;
  std::uint64_t k_ = 0;
  SignedLogValue current_ = SignedLogValue::one();
  // Compensated accumulation of logmag.
  double log_compensation_ = 0.0;
};

/// C(x, k) = x (x-1) ... (x-k+1) / k! for x > 0.
SignedLogValue gen_binomial(double x, std::uint64_t k);

}  // namespace fracpow
