#include "fracpow/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fracpow/errors.hpp"

namespace fracpow {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 1'000'000;

// ln(1 + d) - d, accurate for small |d|.
double log1pmx(double d) {
  if (std::fabs(d) > 0.5) return std::log1p(d) - d;
  // -d^2/2 + d^3/3 - ...
  double term = d;
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    term *= -d;
    const double next = term / k;
    sum += next;
    if (std::fabs(next) <= std::fabs(sum) * kEps) break;
  }
  return sum;
}

// ln Gamma(a) - [(a - 1/2) ln a - a + ln sqrt(2 pi)], valid for a >= 10.
double stirling_correction(double a) {
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 +
          inv2 * (-1.0 / 360.0 +
                  inv2 * (1.0 / 1260.0 +
                          inv2 * (-1.0 / 1680.0 +
                                  inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0))))));
}

// ln( s^a e^{-s} / Gamma(a) ).
double log_gamma_prefactor(double a, double s) {
  if (a >= 10.0) {
    const double d = (s - a) / a;
    return a * log1pmx(d) + 0.5 * std::log(a / (2.0 * M_PI)) - stirling_correction(a);
  }
  return a * std::log(s) - s - log_gamma(a);
}

double lower_series(double a, double s) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= s / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps * 0.5) {
      return sum * std::exp(log_gamma_prefactor(a, s));
    }
  }
  throw ConvergenceError("reg_lower_gamma: series did not converge");
}

double upper_continued_fraction(double a, double s) {
  double b = s + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) {
      return std::exp(log_gamma_prefactor(a, s)) * h;
    }
  }
  throw ConvergenceError("reg_lower_gamma: continued fraction did not converge");
}

void check_gamma_args(double a, double s) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("incomplete gamma: shape must be positive and finite, got " +
                      std::to_string(a));
  }
  if (!(s >= 0.0) || std::isnan(s)) {
    throw DomainError("incomplete gamma: argument must be nonnegative, got " +
                      std::to_string(s));
  }
}

}  // namespace

bool is_integral(double x) { return std::fabs(x - std::round(x)) < kIntegerTolerance; }

double log_gamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(a));
  }
  static constexpr std::array<double, 14> kCoefficients = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double denom = a;
  const double tmp = a + 5.24218750000000000;
  const double head = (a + 0.5) * std::log(tmp) - tmp;
  double series = 0.999999999999997092;
  for (double c : kCoefficients) series += c / ++denom;
  return head + std::log(2.5066282746310005 * series / a);
}

double reg_lower_gamma(double a, double s) {
  check_gamma_args(a, s);
  if (s == 0.0) return 0.0;
  if (std::isinf(s)) return 1.0;
  if (s < a + 1.0) return lower_series(a, s);
  return 1.0 - upper_continued_fraction(a, s);
}

double reg_upper_gamma(double a, double s) {
  check_gamma_args(a, s);
  if (s == 0.0) return 1.0;
  if (std::isinf(s)) return 0.0;
  if (s < a + 1.0) return 1.0 - lower_series(a, s);
  return upper_continued_fraction(a, s);
}

BinomialCoefficients::BinomialCoefficients(double x) : x_(x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gen_binomial: x must be positive and finite, got " + std::to_string(x));
  }
  if (is_integral(x)) x_ = std::round(x);
}

void BinomialCoefficients::advance() {
  const double k = static_cast<double>(k_);
  const double factor = x_ - k;
  ++k_;
  if (current_.sign == 0) return;
  if (factor == 0.0) {
    current_ = SignedLogValue::zero();
    return;
  }
  if (factor < 0.0) current_.sign = -current_.sign;
  const double step = std::log(std::fabs(factor)) - std::log(k + 1.0);
  const double y = step - log_compensation_;
  const double t = current_.logmag + y;
  log_compensation_ = (t - current_.logmag) - y;
  current_.logmag = t;
}

SignedLogValue gen_binomial(double x, std::uint64_t k) {
  BinomialCoefficients coefficients(x);
  while (coefficients.index() < k) {
    coefficients.advance();
    if (coefficients.current().is_zero()) return SignedLogValue::zero();
  }
  return coefficients.current();
}

}  // namespace fracpow
