#pragma once

#include <cstdint>
#include <functional>

namespace fracpow {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t subdivisions = 0;
};

/// Shared cap on interval subdivisions; throws BudgetError once exhausted.
class SubdivisionBudget {
 public:
  explicit SubdivisionBudget(std::uint64_t limit) : remaining_(limit) {}
  void consume();
  std::uint64_t remaining() const { return remaining_; }

 private:
  std::uint64_t remaining_;
};

/// Adaptive Simpson on [a, b] with Richardson correction and local
/// tolerance halving.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, SubdivisionBudget& budget, int max_depth = 60);

/// Integrates over (0, panels] split at every integer. g(m, s) evaluates the
/// integrand at t = m + s, s in [0, 1], and may behave like s^{exponent}
/// as s -> 0+ with exponent > -1. For negative exponents each panel is
/// mapped through s = u^{1/(1+exponent)}, which makes that leading power
/// bounded. Left endpoints are evaluated as right limits.
QuadratureResult integrate_unit_panels(const std::function<double(std::int64_t, double)>& g,
                                       std::int64_t panels, double singular_exponent, double tol,
                                       SubdivisionBudget& budget);

}  // namespace fracpow
