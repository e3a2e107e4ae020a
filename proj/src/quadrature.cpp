#include "fracpow/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "fracpow/errors.hpp"

namespace fracpow {

void SubdivisionBudget::consume() {
  if (remaining_ == 0) throw BudgetError("quadrature subdivision budget exhausted");
  --remaining_;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  SubdivisionBudget& budget;
  std::uint64_t subdivisions = 0;
  double error = 0.0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  st.budget.consume();
  ++st.subdivisions;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol || !(lm > a && rm < b)) {
    st.error += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, SubdivisionBudget& budget, int max_depth) {
  if (!(b > a)) return {};
  SimpsonState st{f, budget};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  // A single Simpson panel can miss structure entirely; start from four.
  const double q1 = a + 0.25 * (b - a);
  const double q3 = a + 0.75 * (b - a);
  const double m = 0.5 * (a + b);
  const double fq1 = f(q1);
  const double fq3 = f(q3);
  const double left_whole = (m - a) / 6.0 * (fa + 4.0 * fq1 + fm);
  const double right_whole = (b - m) / 6.0 * (fm + 4.0 * fq3 + fb);
  QuadratureResult out;
  out.value = simpson_step(st, a, m, fa, fq1, fm, left_whole, 0.5 * tol, max_depth) +
              simpson_step(st, m, b, fm, fq3, fb, right_whole, 0.5 * tol, max_depth);
  out.error_estimate = st.error;
  out.subdivisions = st.subdivisions;
  return out;
}

QuadratureResult integrate_unit_panels(const std::function<double(std::int64_t, double)>& g,
                                       std::int64_t panels, double singular_exponent, double tol,
                                       SubdivisionBudget& budget) {
  if (!(singular_exponent > -1.0)) {
    throw DomainError("integrate_unit_panels: singular exponent must exceed -1");
  }
  QuadratureResult total;
  if (panels <= 0) return total;
  const double panel_tol = tol / static_cast<double>(panels);
  const bool mapped = singular_exponent < 0.0;
  const double q = mapped ? 1.0 / (1.0 + singular_exponent) : 1.0;
  for (std::int64_t m = 0; m < panels; ++m) {
    std::function<double(double)> integrand;
    if (mapped) {
      integrand = [&, m](double u) {
        // u^q * (u^q)^{exponent} * q u^{q-1} is constant, so the mapped
        // integrand has a finite limit at u = 0.
        const double ue = std::max(u, 1e-12);
        return g(m, std::pow(ue, q)) * q * std::pow(ue, q - 1.0);
      };
    } else {
      integrand = [&, m](double s) { return g(m, std::max(s, 1e-300)); };
    }
    const QuadratureResult part = adaptive_simpson(integrand, 0.0, 1.0, panel_tol, budget);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.subdivisions += part.subdivisions;
  }
  return total;
}

}  // namespace fracpow
