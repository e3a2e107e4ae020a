#pragma once

// Test-only reference implementations. None of these share code with the
// library paths they check.

#include <cmath>
#include <cstdint>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// The density series summed term by term in 50-digit arithmetic, with t
/// given as base + offset.
inline Big density(std::int64_t base, double offset, double r, double lambda, double x,
                   double y) {
  const Big t = Big(base) + Big(offset);
  if (t <= 0) return 0;
  const Big R = Big(r) / (1 - Big(r)) * exp(Big(lambda));
  const Big pref = pow(Big(lambda), Big(y)) * pow(1 - Big(r), Big(x)) / boost::math::tgamma(Big(y));
  Big sum = 0;
  Big c = 1;  // C(x, k)
  for (std::int64_t k = 0; Big(k) < t; ++k) {
    const Big dt = Big(base - k) + Big(offset);
    Big term = c * pow(R, k) * exp(-Big(lambda) * t);
    if (y != 1.0) term *= pow(dt, Big(y) - 1);
    sum += term;
    c = c * (Big(x) - k) / (k + 1);
    if (c == 0) break;
  }
  return pref * sum;
}

inline double density(double t, double r, double lambda, double x, double y) {
  const auto base = static_cast<std::int64_t>(std::floor(t));
  return static_cast<double>(density(base, t - static_cast<double>(base), r, lambda, x, y));
}

/// Binomial(n, r) mixture of Gamma(y, lambda) densities shifted by k.
inline double mixture_density(double t, double r, double lambda, int n, double y) {
  double sum = 0.0;
  for (int k = 0; k <= n && k < t; ++k) {
    const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                  std::lgamma(n - k + 1.0)) *
                         std::pow(r, k) * std::pow(1.0 - r, n - k);
    const double s = t - k;
    const double gamma_pdf =
        std::exp(y * std::log(lambda) + (y - 1.0) * std::log(s) - lambda * s - std::lgamma(y));
    sum += binom * gamma_pdf;
  }
  return sum;
}

/// Integral of f over [a, b] by tanh-sinh (endpoint singularities allowed).
template <class F>
double integrate(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-13);
}

/// Bisection for the root of a nondecreasing g on [lo, hi].
template <class G>
double bisect(G g, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
