#include "fracpow/jorgensen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fracpow/distribution.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/series.hpp"
#include "fracpow/specfun.hpp"
#include "parallel.hpp"

namespace fracpow {

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::R_LE_1_Y_GE_1: return "R_LE_1_Y_GE_1";
    case Branch::INTEGER_X: return "INTEGER_X";
    case Branch::R_GT_1_NONINTEGER: return "R_GT_1_NONINTEGER";
    case Branch::R_LE_1_Y_LT_1_NONINTEGER: return "R_LE_1_Y_LT_1_NONINTEGER";
    case Branch::R_LE_1_Y_LT_1_INTEGER_STRICT: return "R_LE_1_Y_LT_1_INTEGER_STRICT";
  }
  return "UNKNOWN";
}

std::string_view to_string(TheoremClause clause) {
  return clause == TheoremClause::A_R_LE_1 ? "a: R <= 1" : "b: R > 1";
}

std::string_view to_string(ScanVerdict verdict) {
  switch (verdict) {
    case ScanVerdict::NONNEGATIVE_ON_GRID: return "NONNEGATIVE_ON_GRID";
    case ScanVerdict::NEGATIVE_WITNESS: return "NEGATIVE_WITNESS";
    case ScanVerdict::DIVERGENCE_DETECTED: return "DIVERGENCE_DETECTED";
  }
  return "UNKNOWN";
}

MembershipVerdict classify(const MixtureParams& params, const PowerPair& power,
                           bool strict_theorem) {
  MembershipVerdict v;
  if (params.big_r <= 1.0) {
    v.theorem_case = TheoremClause::A_R_LE_1;
    if (power.y >= 1.0) {
      v.member = true;
      v.branch = Branch::R_LE_1_Y_GE_1;
    } else if (power.is_integer_x) {
      v.member = !strict_theorem;
      v.branch = strict_theorem ? Branch::R_LE_1_Y_LT_1_INTEGER_STRICT : Branch::INTEGER_X;
    } else {
      v.member = false;
      v.branch = Branch::R_LE_1_Y_LT_1_NONINTEGER;
    }
    return v;
  }
  v.theorem_case = TheoremClause::B_R_GT_1;
  v.member = power.is_integer_x;
  v.branch = power.is_integer_x ? Branch::INTEGER_X : Branch::R_GT_1_NONINTEGER;
  return v;
}

std::optional<double> negativity_onset_estimate(const MixtureParams& params,
                                                const PowerPair& power) {
  if (params.big_r <= 1.0 || power.is_integer_x) return std::nullopt;
  // C(x,k) ~ (-1)^k / (Gamma(-x) k^{x+1}); the alternating tail of the
  // smoothed partial sums overtakes the (1+R)^x t^{y-1} bulk roughly where
  // n ln R - (x+y) ln n = x ln(1+R) + ln|Gamma(-x)|.
  const double x = power.x;
  const double log_r = std::log(params.big_r);
  const double log_abs_gamma_neg_x = std::log(std::numbers::pi) -
                                     std::log(std::fabs(std::sin(std::numbers::pi * x))) -
                                     log_gamma(1.0 + x);
  const double rhs = x * std::log1p(params.big_r) + log_abs_gamma_neg_x;
  const double slope = x + power.y;
  auto h = [&](double n) { return n * log_r - slope * std::log(n) - rhs; };
  double lo = std::max(2.0, slope / log_r);
  if (h(lo) >= 0.0) return lo;
  double hi = 2.0 * lo;
  while (h(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return hi;
  }
  for (int i = 0; i < 100 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double scan_horizon(const MixtureParams& params, const PowerPair& power) {
  double horizon = default_horizon(params, power);
  if (power.y >= 1.0) {
    if (auto onset = negativity_onset_estimate(params, power)) {
      horizon = std::max(horizon, 2.0 * *onset);
    }
  }
  return horizon;
}

namespace {

struct GridPoint {
  std::int64_t base;
  double offset;
};

constexpr double kClusterEps[] = {1e-3, 1e-4, 1e-5, 1e-6};

// First m with sum_{k<=m} C(x,k) R^k < 0, summed with a running scale.
std::optional<std::int64_t> lattice_flip(const DensitySeries& series) {
  double scaled = 0.0;
  double scale = -INFINITY;
  for (std::int64_t m = 0; m <= series.max_index(); ++m) {
    const SignedLogValue c = series.coefficient(m);
    if (c.is_zero()) break;
    if (c.logmag > scale) {
      scaled = std::isinf(scale) ? 0.0 : scaled * std::exp(scale - c.logmag);
      scale = c.logmag;
    }
    scaled += c.sign * std::exp(c.logmag - scale);
    if (scaled < 0.0) return m;
  }
  return std::nullopt;
}

bool ratio_matches(double f_coarse, double f_fine, double eps_coarse, double eps_fine,
                   double y) {
  const double expected = std::pow(eps_coarse / eps_fine, y - 1.0);
  const double ratio = f_coarse / f_fine;
  return ratio > 0.5 * expected && ratio < 2.0 * expected;
}

}  // namespace

ScanReport positivity_scan(const MixtureParams& params, const PowerPair& power,
                           const EvalProfile& profile) {
  profile.validate();
  ScanReport report;
  const double horizon = profile.horizon_T.value_or(scan_horizon(params, power));
  report.horizon = horizon;
  report.heuristic_horizon = params.big_r > 1.0 && power.y >= 1.0 && !power.is_integer_x;

  const auto top = static_cast<std::int64_t>(std::floor(horizon));
  const DensitySeries series(params, power, top + 1, profile.abs_tol);

  std::vector<GridPoint> points;
  const auto uniform_count =
      static_cast<std::size_t>(std::max(10000.0, std::ceil(8.0 * horizon)));
  points.reserve(uniform_count + 6 * static_cast<std::size_t>(top + 1));
  for (std::size_t i = 1; i <= uniform_count; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(uniform_count);
    const double base = std::floor(t);
    points.push_back({static_cast<std::int64_t>(base), t - base});
  }
  for (std::int64_t m = 0; m <= top; ++m) {
    for (double eps : kClusterEps) points.push_back({m, eps});
    if (m > 0) points.push_back({m, 0.0});
  }

  // Deep clusters: at integers with a negative coefficient the term
  // C(x,m) R^m (t-m)^{y-1} dominates only below some eps, which can be far
  // smaller than 1e-6. Place three more points below where it is >= 10x the
  // rest of the sum.
  struct Cluster {
    std::int64_t m;
    std::size_t first;  // index of the deep points in `points`
    double eps[3];
  };
  std::vector<Cluster> clusters;
  if (power.y < 1.0 && !power.is_integer_x) {
    for (std::int64_t m = 1; m <= top; ++m) {
      const SignedLogValue c = series.coefficient(m);
      if (c.sign >= 0) continue;
      const double log_singular =
          series.log_prefactor() + c.logmag - params.lambda * static_cast<double>(m);
      const SeriesValue rest = series.evaluate(m, 0.0);
      double log_eps = std::log(1e-6);
      if (!rest.value.is_zero()) {
        log_eps = std::min(
            log_eps, (log_singular - std::log(10.0) - rest.value.logmag) / (1.0 - power.y));
      }
      log_eps = std::max(log_eps, std::log(1e-290));
      Cluster cl{m, points.size(), {}};
      for (int j = 0; j < 3; ++j) {
        cl.eps[j] = std::exp(log_eps) * std::pow(10.0, -(j + 1));
        points.push_back({m, cl.eps[j]});
      }
      clusters.push_back(cl);
    }
  }

  const double work = static_cast<double>(points.size()) * static_cast<double>(top + 2);
  if (work > static_cast<double>(profile.scan_work_limit)) {
    throw BudgetError("positivity_scan: grid size x series length exceeds scan_work_limit");
  }

  std::vector<SeriesValue> values(points.size());
  detail::parallel_for(points.size(), profile.threads, [&](std::size_t i) {
    values[i] = series.evaluate(points[i].base, points[i].offset);
  });
  report.points_evaluated = points.size();

  std::size_t argmin = 0;
  bool any_negative = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (signed_log_less(values[i].value, values[argmin].value)) argmin = i;
    any_negative = any_negative || values[i].certified_negative(profile.abs_tol);
  }
  report.witness_base = points[argmin].base;
  report.witness_offset = points[argmin].offset;
  report.witness_t = static_cast<double>(points[argmin].base) + points[argmin].offset;
  report.min_value = values[argmin].as_double;
  report.min_signed = values[argmin].value;

  for (const Cluster& cl : clusters) {
    const SeriesValue& a = values[cl.first];
    const SeriesValue& b = values[cl.first + 1];
    const SeriesValue& c = values[cl.first + 2];
    if (!a.certified_negative(profile.abs_tol) || !b.certified_negative(profile.abs_tol) ||
        !c.certified_negative(profile.abs_tol)) {
      continue;
    }
    // Ratios in log form; the values can exceed the double range.
    const double ab = std::exp(a.value.logmag - b.value.logmag);
    const double bc = std::exp(b.value.logmag - c.value.logmag);
    if (ratio_matches(ab, 1.0, cl.eps[0], cl.eps[1], power.y) &&
        ratio_matches(bc, 1.0, cl.eps[1], cl.eps[2], power.y)) {
      report.divergence_at = cl.m;
      break;
    }
  }

  report.lattice_sign_flip = lattice_flip(series);
  if (report.divergence_at) {
    report.verdict = ScanVerdict::DIVERGENCE_DETECTED;
  } else if (any_negative) {
    report.verdict = ScanVerdict::NEGATIVE_WITNESS;
  } else {
    report.verdict = ScanVerdict::NONNEGATIVE_ON_GRID;
  }
  return report;
}

AgreementReport scan_agrees_with_theorem(const MixtureParams& params,
                                         std::span<const PowerPair> grid,
                                         const EvalProfile& profile) {
  if (grid.empty()) throw DomainError("scan_agrees_with_theorem: grid is empty");
  AgreementReport report;
  report.params = params;
  for (const PowerPair& power : grid) {
    AgreementEntry entry;
    entry.power = power;
    entry.verdict = classify(params, power);
    entry.scan = positivity_scan(params, power, profile);
    const auto agrees = [&](const ScanReport& scan) {
      const bool clean = scan.verdict == ScanVerdict::NONNEGATIVE_ON_GRID;
      return entry.verdict.member == clean;
    };
    entry.agrees = agrees(entry.scan);
    if (!entry.agrees && !entry.verdict.member && params.big_r > 1.0 && power.y >= 1.0) {
      EvalProfile wider = profile;
      wider.horizon_T = 4.0 * entry.scan.horizon;
      entry.scan = positivity_scan(params, power, wider);
      entry.retried = true;
      entry.agrees = agrees(entry.scan);
    }
    if (!entry.agrees) ++report.disagreements;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

StripZero strip_zero(const MixtureParams& params) {
  StripZero z;
  z.real_part = std::log1p(-params.r) - std::log(params.r);
  z.imag_part = std::numbers::pi;
  z.in_strip = z.real_part < params.lambda;
  const std::complex<double> z0(z.real_part, z.imag_part);
  const double rho = params.r / (1.0 - params.r);
  z.residual = std::abs(1.0 + rho * std::exp(z0));
  return z;
}

}  // namespace fracpow
