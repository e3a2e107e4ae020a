#pragma once

#include <cstdint>
#include <vector>

#include "fracpow/params.hpp"
#include "fracpow/signed_log.hpp"

namespace fracpow {

/// Result of summing the density series at one point.
struct SeriesValue {
  SignedLogValue value;
  /// value as a double, saturated at +-DBL_MAX (see saturated).
  double as_double = 0.0;
  /// ln of an upper bound on accumulated roundoff; -inf for an empty sum.
  double log_roundoff = -INFINITY;
  std::size_t terms = 0;
  bool saturated = false;

  /// Negative beyond both the absolute threshold and the roundoff bound.
  /// A value below -abs_tol counts, and so does a negative value whose
  /// magnitude is at least 1e3 times the roundoff bound (this catches
  /// negativity far below abs_tol or below the double range).
  bool certified_negative(double abs_tol) const;
};

/// Evaluates
///   f(t) = lambda^y (1-r)^x / Gamma(y) * sum_k C(x,k) R^k e^{-lambda t} (t-k)_+^{y-1}
/// at t = base + offset with 0 <= offset <= 1. Splitting t this way keeps
/// t - base exact for offsets far below the spacing of doubles near base.
///
/// Coefficients are precomputed up to max_index; the object is immutable and
/// safe to share between threads.
class DensitySeries {
 public:
  DensitySeries(const MixtureParams& params, const PowerPair& power, std::int64_t max_index,
                double abs_tol = 1e-12);

  /// Partial sum over k = 0 .. min(n, max_index, last k with k < t).
  SeriesValue evaluate(std::int64_t base, double offset, std::int64_t n) const;
  SeriesValue evaluate(std::int64_t base, double offset) const {
    return evaluate(base, offset, max_index_);
  }

  /// Single series term (prefactor included); zero when k >= t.
  SignedLogValue term(std::int64_t k, std::int64_t base, double offset) const;

  /// C(x, k) R^k.
  SignedLogValue coefficient(std::int64_t k) const;

  std::int64_t max_index() const { return max_index_; }
  double log_prefactor() const { return log_prefactor_; }
  const MixtureParams& params() const { return params_; }
  const PowerPair& power() const { return power_; }

 private:
  double log_term(std::int64_t k, std::int64_t base, double offset) const;

  MixtureParams params_;
  PowerPair power_;
  std::int64_t max_index_;
  double abs_tol_;
  double log_prefactor_;
  // ln|C(x,k)| + k ln(r/(1-r)); the e^{lambda k} part of R^k is folded into
  // e^{-lambda (t-k)}.
  std::vector<double> log_coeff_;
  std::vector<int> sign_;
  bool pairwise_;
  bool cutoff_allowed_;
};

}  // namespace fracpow
