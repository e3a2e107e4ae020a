#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fracpow/params.hpp"
#include "fracpow/signed_log.hpp"

namespace fracpow {

/// Which part of the membership characterization decided a pair.
enum class Branch {
  R_LE_1_Y_GE_1,
  INTEGER_X,
  R_GT_1_NONINTEGER,
  R_LE_1_Y_LT_1_NONINTEGER,
  /// Only produced with strict_theorem: integer x, R <= 1, y < 1, rejected
  /// by the literal clause a) although the density is a binomial mixture.
  R_LE_1_Y_LT_1_INTEGER_STRICT,
};

/// a) R <= 1: members are (0, inf) x [1, inf).  b) R > 1: members are N x (0, inf).
enum class TheoremClause { A_R_LE_1, B_R_GT_1 };

struct MembershipVerdict {
  bool member = false;
  Branch branch = Branch::R_LE_1_Y_GE_1;
  TheoremClause theorem_case = TheoremClause::A_R_LE_1;
};

std::string_view to_string(Branch branch);
std::string_view to_string(TheoremClause clause);

/// Membership of (x, y). Integer x is a member for every y > 0 and every R;
/// strict_theorem = true instead applies clause a) literally when R <= 1.
MembershipVerdict classify(const MixtureParams& params, const PowerPair& power,
                           bool strict_theorem = false);

enum class ScanVerdict { NONNEGATIVE_ON_GRID, NEGATIVE_WITNESS, DIVERGENCE_DETECTED };

std::string_view to_string(ScanVerdict verdict);

struct ScanReport {
  ScanVerdict verdict = ScanVerdict::NONNEGATIVE_ON_GRID;
  /// Location of the smallest density value found: t = witness_base + witness_offset.
  double witness_t = 0.0;
  std::int64_t witness_base = 0;
  double witness_offset = 0.0;
  /// density_at(witness_base, witness_offset).as_double; may underflow.
  double min_value = 0.0;
  /// Same minimum in signed-log form, never underflows.
  SignedLogValue min_signed;
  std::uint64_t points_evaluated = 0;
  double horizon = 0.0;
  /// Integer m near which f(m + eps) ~ -C eps^{y-1} was confirmed.
  std::optional<std::int64_t> divergence_at;
  /// First m with sum_{k<=m} C(x,k) R^k < 0 (integer-lattice partial sums).
  std::optional<std::int64_t> lattice_sign_flip;
  /// R > 1, y >= 1, non-integer x: the horizon comes from an asymptotic
  /// estimate, not from a proven witness location.
  bool heuristic_horizon = false;
};

/// Asymptotic estimate of where the density of a non-integer power first
/// turns negative when R > 1; nullopt when R <= 1 or x is an integer.
std::optional<double> negativity_onset_estimate(const MixtureParams& params,
                                                const PowerPair& power);

/// Default scan horizon: default_horizon(), raised to twice the onset
/// estimate for R > 1, y >= 1, non-integer x.
double scan_horizon(const MixtureParams& params, const PowerPair& power);

/// Grid search for negative density values on (0, horizon]: a uniform grid of
/// max(10^4, 8 T) points, clusters m + eps (eps = 1e-3 .. 1e-6) at every
/// integer, the lattice points t = m, and for y < 1 a deeper eps cluster at
/// integers whose coefficient is negative.
ScanReport positivity_scan(const MixtureParams& params, const PowerPair& power,
                           const EvalProfile& profile);

struct AgreementEntry {
  PowerPair power;
  MembershipVerdict verdict;
  ScanReport scan;
  bool agrees = false;
  bool retried = false;
};

struct AgreementReport {
  MixtureParams params;
  std::vector<AgreementEntry> entries;
  std::size_t disagreements = 0;
};

/// Runs classify and positivity_scan on every pair. Non-members with R > 1,
/// y >= 1 that scan clean are retried once at four times the horizon.
AgreementReport scan_agrees_with_theorem(const MixtureParams& params,
                                         std::span<const PowerPair> grid,
                                         const EvalProfile& profile);

/// The zero z0 = i pi + ln((1-r)/r) of z -> 1 + r/(1-r) e^z.
struct StripZero {
  double real_part = 0.0;
  double imag_part = 0.0;
  /// real_part < lambda, i.e. z0 lies in the strip (-inf, lambda) + iR.
  bool in_strip = false;
  /// |1 + r/(1-r) e^{z0}| in complex arithmetic.
  double residual = 0.0;
};

StripZero strip_zero(const MixtureParams& params);

}  // namespace fracpow
