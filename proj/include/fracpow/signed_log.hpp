#pragma once

#include <cmath>
#include <compare>

namespace fracpow {

/// A real number stored as sign and natural log of magnitude.
///
/// sign == 0 is an exact zero; logmag is then ignored. Products never
/// overflow, which is what the generalized binomial recurrence needs.
struct SignedLogValue {
  int sign = 0;
  double logmag = 0.0;

  static constexpr SignedLogValue zero() { return {0, 0.0}; }
  static constexpr SignedLogValue one() { return {1, 0.0}; }

  static SignedLogValue from_double(double v) {
    if (v == 0.0) return zero();
    return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
  }

  /// Saturates to +-inf when the magnitude is not representable.
  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  bool is_zero() const { return sign == 0; }

  double log10_magnitude() const {
    return sign == 0 ? -INFINITY : logmag / 2.302585092994045684;
  }

  friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.logmag + b.logmag};
  }

  friend SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.logmag - b.logmag};
  }

  friend bool operator==(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0 || b.sign == 0) return a.sign == b.sign;
    return a.sign == b.sign && a.logmag == b.logmag;
  }
};

/// Total order on represented values (not on the raw fields).
inline bool signed_log_less(SignedLogValue a, SignedLogValue b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  return a.sign > 0 ? a.logmag < b.logmag : a.logmag > b.logmag;
}

}  // namespace fracpow
