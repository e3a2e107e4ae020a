// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracpow/distribution.hpp"
#include "fracpow/jorgensen.hpp"
#include "fracpow/series.hpp"
#include "fracpow/specfun.hpp"
#include "fracpow/verify.hpp"

using namespace fracpow;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

const std::vector<double> kR{0.05, 0.1, 0.3, 0.5, 0.8};
const std::vector<double> kLambda{0.25, 1.0, 3.0};
const std::vector<double> kX{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.7};
const std::vector<double> kY{0.3, 0.5, 1.0, 1.5, 2.5};

struct Point {
  MixtureParams params;
  PowerPair power;
};

std::vector<Point> member_grid() {
  std::vector<Point> out;
  for (double r : kR)
    for (double lambda : kLambda)
      for (double x : kX)
        for (double y : kY) {
          const auto p = MixtureParams::make(r, lambda);
          const auto pw = PowerPair::make(x, y);
          if (classify(p, pw).member) out.push_back({p, pw});
        }
  return out;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome concordance() {
  EvalProfile profile;
  std::size_t pairs = 0, disagreements = 0, retries = 0;
  std::string first;
  std::vector<PowerPair> grid;
  for (double x : kX)
    for (double y : kY) grid.push_back(PowerPair::make(x, y));
  for (double r : kR)
    for (double lambda : kLambda) {
      const auto report = scan_agrees_with_theorem(MixtureParams::make(r, lambda), grid, profile);
      for (const auto& e : report.entries) {
        ++pairs;
        retries += e.retried;
        // Members must also stay above -1e-12 everywhere on the grid.
        const bool ok = e.agrees && (!e.verdict.member || e.scan.min_value >= -1e-12);
        if (!ok) {
          ++disagreements;
          if (first.empty())
            first = " first=(r=" + fmt("%g", r) + ",lambda=" + fmt("%g", lambda) +
                    ",x=" + fmt("%g", e.power.x) + ",y=" + fmt("%g", e.power.y) + ")";
        }
      }
    }
  return {disagreements == 0, std::to_string(pairs) + " pairs, " + std::to_string(disagreements) +
                                  " disagreements, " + std::to_string(retries) + " retries" + first};
}

Outcome divergence_law() {
  const auto p = MixtureParams::make(0.1, 1.0);
  const auto pw = PowerPair::make(0.5, 0.5);
  auto f = [&](double eps) { return density_at(2, eps, p, pw).as_double; };
  const std::vector<double> eps{1e-3, 1e-4, 1e-5};
  bool negative = true;
  for (double e : eps) negative = negative && f(e) < 0.0;
  const double expected = std::pow(10.0, pw.y - 1.0);
  bool ratios = true;
  std::string detail;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    const double ratio = f(eps[i]) / f(eps[i + 1]);
    ratios = ratios && ratio > 0.0 && ratio / expected < 1.5 && expected / ratio < 1.5;
    detail += "f(2+" + fmt("%g", eps[i]) + ")/f(2+" + fmt("%g", eps[i + 1]) + ")=" +
              fmt("%.4g", ratio) + " ";
  }
  // Differencing three points removes the regular part of f near the edge.
  const double f3 = f(1e-3), f4 = f(1e-4), f5 = f(1e-5), f6 = f(1e-6);
  detail += "f(2+1e-3)=" + fmt("%.6g", f3) + " f(2+1e-4)=" + fmt("%.6g", f4) +
            " f(2+1e-5)=" + fmt("%.6g", f5) + "; expected ratio " + fmt("%.4g", expected) +
            "; offset-free ratio (f4-f5)/(f5-f6)=" + fmt("%.4g", (f4 - f5) / (f5 - f6));
  return {negative && ratios, detail};
}

Outcome normalization(const std::vector<Point>& members) {
  EvalProfile profile;
  double worst = 0.0;
  std::size_t failures = 0;
  for (const auto& m : members) {
    const OracleReport r = check_normalization(m.params, m.power, profile);
    worst = std::max(worst, std::fabs(r.computed - 1.0));
    failures += !(std::fabs(r.computed - 1.0) <= 1e-8);
  }
  return {failures == 0, std::to_string(members.size()) + " members, max |int f - 1| = " +
                             fmt("%.3g", worst)};
}

Outcome transform_consistency() {
  EvalProfile profile;
  const std::vector<Point> sets{
      {MixtureParams::make(0.2, 1.0), PowerPair::make(1.0, 1.0)},
      {MixtureParams::make(0.1, 1.0), PowerPair::make(0.5, 1.5)},
      {MixtureParams::make(0.1, 1.0), PowerPair::make(2.5, 1.0)},
      {MixtureParams::make(0.5, 1.0), PowerPair::make(3.0, 0.2)},
      {MixtureParams::make(0.05, 1.0), PowerPair::make(3.7, 2.5)},
      {MixtureParams::make(0.3, 0.25), PowerPair::make(1.5, 1.5)},
      {MixtureParams::make(0.8, 0.25), PowerPair::make(2.0, 0.5)},
      {MixtureParams::make(0.5, 3.0), PowerPair::make(1.0, 0.3)},
      {MixtureParams::make(0.3, 0.25), PowerPair::make(0.5, 2.5)},
      {MixtureParams::make(0.05, 0.25), PowerPair::make(2.5, 1.0)},
  };
  double worst = 0.0;
  std::size_t failures = 0;
  for (const auto& s : sets) {
    const double l = s.params.lambda;
    const std::vector<double> zs{-2.0, -1.0, 0.0, 0.5 * l, 0.9 * l};
    for (const auto& r : check_transform(s.params, s.power, zs, profile)) {
      worst = std::max(worst, std::fabs(r.computed / r.reference - 1.0));
      failures += !(std::fabs(r.computed / r.reference - 1.0) <= 1e-6);
    }
  }
  return {failures == 0, "10 sets x 5 z, max relative error " + fmt("%.3g", worst)};
}

Outcome moments(const std::vector<Point>& members) {
  EvalProfile profile;
  double worst = 0.0;
  std::size_t failures = 0;
  for (const auto& m : members) {
    for (const auto& r : check_moments(m.params, m.power, profile)) {
      worst = std::max(worst, std::fabs(r.computed / r.reference - 1.0));
      failures += !(std::fabs(r.computed / r.reference - 1.0) <= 1e-6);
    }
  }
  return {failures == 0, std::to_string(members.size()) + " members x 4 checks, max relative error " +
                             fmt("%.3g", worst)};
}

Outcome sampling(const std::vector<Point>& members) {
  EvalProfile profile;
  const std::size_t n = 100000;
  const double critical = 1.36 * 1.5 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  std::size_t failures = 0, count = 0;
  for (const auto& m : members) {
    if (!m.power.is_integer_x) continue;
    const OracleReport a = check_sampling(m.params, m.power, n, profile);
    ++count;
    worst = std::max(worst, a.computed);
    failures += !(a.computed < critical);
    if (count % 15 == 1) {
      // Reproducibility on a subset; the full set would double the runtime.
      failures += check_sampling(m.params, m.power, n, profile).computed != a.computed;
    }
  }
  return {failures == 0, std::to_string(count) + " integer-x members, max KS " +
                             fmt("%.4g", worst) + " < " + fmt("%.4g", critical)};
}

Outcome strip() {
  std::mt19937_64 gen(20240531);
  std::uniform_real_distribution<double> r_dist(1e-3, 1.0 - 1e-3);
  std::uniform_real_distribution<double> l_dist(1e-2, 10.0);
  std::size_t failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = MixtureParams::make(r_dist(gen), l_dist(gen));
    const StripZero z = strip_zero(p);
    const double residual =
        std::abs(1.0 + p.r / (1.0 - p.r) * std::exp(std::complex<double>(z.real_part, z.imag_part)));
    worst = std::max(worst, residual);
    failures += (z.in_strip != (p.big_r > 1.0)) || !(residual < 1e-12);
  }
  return {failures == 0, "1000 draws, max residual " + fmt("%.3g", worst)};
}

Outcome alternating_ratio() {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> r_dist(0.01, 0.5);
  std::uniform_real_distribution<double> l_dist(0.05, 3.0);
  std::uniform_real_distribution<double> x_dist(0.05, 6.0);
  std::uniform_real_distribution<double> y_dist(1.0, 5.0);
  std::uniform_real_distribution<double> t_dist(1.0, 80.0);
  std::size_t pairs = 0, failures = 0;
  double worst = -INFINITY;
  while (pairs < 20000) {
    const auto p = MixtureParams::make(r_dist(gen), l_dist(gen));
    const auto pw = PowerPair::make(x_dist(gen), y_dist(gen));
    if (p.big_r > 1.0 || pw.is_integer_x) continue;
    const double t = t_dist(gen);
    const auto base = static_cast<std::int64_t>(std::floor(t));
    if (pw.k0 + 1 >= base) continue;
    const DensitySeries series(p, pw, base);
    std::uniform_int_distribution<std::int64_t> k_dist(pw.k0, base - 2);
    const std::int64_t k = k_dist(gen);
    const double log_ratio = series.term(k + 1, base, t - static_cast<double>(base)).logmag -
                             series.term(k, base, t - static_cast<double>(base)).logmag;
    worst = std::max(worst, log_ratio);
    failures += !(log_ratio < 0.0);
    ++pairs;
  }
  return {failures == 0, "20000 (t, k) pairs, min 1 - |u_{k+1}/u_k| = " + fmt("%.3g", -std::expm1(worst))};
}

Outcome binomial_identity() {
  double worst = 0.0;
  for (int x = 1; x <= 20; ++x)
    for (double r : {0.1, 0.5, 0.9}) {
      double sum = 0.0;
      for (int k = 0; k <= x; ++k) {
        const SignedLogValue c = gen_binomial(x, static_cast<std::uint64_t>(k));
        sum += c.sign * std::exp(c.logmag + k * std::log(r) + (x - k) * std::log1p(-r));
      }
      worst = std::max(worst, std::fabs(sum - 1.0));
    }
  return {worst <= 1e-14, "x = 1..20, r in {0.1, 0.5, 0.9}, max |sum - 1| = " + fmt("%.3g", worst)};
}

}  // namespace

int main() {
  const std::vector<Point> members = member_grid();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"theorem concordance", concordance},
      {"divergence law", divergence_law},
      {"normalization", [&] { return normalization(members); }},
      {"transform consistency", transform_consistency},
      {"moments", [&] { return moments(members); }},
      {"sampling", [&] { return sampling(members); }},
      {"strip zero", strip},
      {"alternating ratio", alternating_ratio},
      {"binomial identity", binomial_identity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.passed;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
