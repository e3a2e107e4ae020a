#include "fracpow/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracpow/distribution.hpp"
#include "fracpow/errors.hpp"
#include "fracpow/format.hpp"
#include "fracpow/jorgensen.hpp"
#include "fracpow/verify.hpp"

namespace fracpow::cli {

namespace {

using Value = std::variant<std::monostate, double, std::int64_t, bool, std::string>;
using Row = std::vector<std::pair<std::string, Value>>;

enum class Format { Csv, Json };

// Writes rows as CSV (header once) or JSON lines with keys in row order.
class Emitter {
 public:
  Emitter(std::ostream& out, Format format) : out_(out), format_(format) {}

  void emit(const Row& row) {
    if (format_ == Format::Json) {
      nlohmann::ordered_json j;
      for (const auto& [key, value] : row) j[key] = to_json(value);
      out_ << j.dump() << '\n';
      return;
    }
    if (!header_written_) {
      std::string header;
      for (const auto& [key, value] : row) {
        if (!header.empty()) header += ',';
        header += key;
      }
      out_ << header << '\n';
      header_written_ = true;
    }
    std::string line;
    bool first = true;
    for (const auto& [key, value] : row) {
      if (!first) line += ',';
      line += to_csv(value);
      first = false;
    }
    out_ << line << '\n';
  }

 private:
  static nlohmann::ordered_json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::ordered_json {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return nullptr;
          } else if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(x)) return format_double(x);
            return x;
          } else {
            return x;
          }
        },
        v);
  }

  static std::string to_csv(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return "";
          } else if constexpr (std::is_same_v<T, double>) {
            return format_double(x);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return std::to_string(x);
          } else if constexpr (std::is_same_v<T, bool>) {
            return x ? "true" : "false";
          } else {
            return x;
          }
        },
        v);
  }

  std::ostream& out_;
  Format format_;
  bool header_written_ = false;
};

struct Options {
  double r = NAN;
  double lambda = NAN;
  double x = NAN;
  double y = NAN;
  double abs_tol = 1e-12;
  double horizon = 0.0;
  std::uint64_t quad_budget = EvalProfile{}.quad_budget;
  std::uint64_t seed = EvalProfile{}.seed;
  unsigned threads = 0;
  std::string format;
  std::string output;
  bool strict = false;
  bool strict_theorem = false;
  std::vector<double> t;
  std::vector<double> u;
  std::vector<double> z;
  std::size_t n = 1000;
  std::size_t samples = 100000;
  double x_min = 0.1, x_max = 5.0, x_step = 0.1;
  double y_min = 0.1, y_max = 3.0, y_step = 0.1;
  bool no_scan = false;
};

struct Failure {
  int code;
  std::string reason;
};

EvalProfile make_profile(const Options& o) {
  EvalProfile p;
  p.abs_tol = o.abs_tol;
  p.quad_budget = o.quad_budget;
  if (o.horizon > 0.0) p.horizon_T = o.horizon;
  p.seed = o.seed;
  p.threads = o.threads;
  p.validate();
  return p;
}

Row scan_row(const PowerPair& power, const ScanReport& s) {
  Row row{{"x", power.x},
          {"y", power.y},
          {"verdict", std::string(to_string(s.verdict))},
          {"witness_t", s.witness_t},
          {"witness_offset", s.witness_offset},
          {"min_value", s.min_value},
          {"min_log10_abs", s.min_signed.log10_magnitude()},
          {"points_evaluated", static_cast<std::int64_t>(s.points_evaluated)},
          {"horizon", s.horizon}};
  row.emplace_back("divergence_at",
                   s.divergence_at ? Value(*s.divergence_at) : Value(std::monostate{}));
  row.emplace_back("lattice_sign_flip",
                   s.lattice_sign_flip ? Value(*s.lattice_sign_flip) : Value(std::monostate{}));
  row.emplace_back("heuristic_horizon", s.heuristic_horizon);
  return row;
}

Row report_row(const OracleReport& r) {
  return {{"check_name", r.check_name},
          {"computed", r.computed},
          {"reference", r.reference},
          {"tolerance", r.tolerance},
          {"tolerance_kind",
           std::string(r.kind == ToleranceKind::Absolute ? "absolute" : "relative")},
          {"passed", r.passed},
          {"runtime_note", r.runtime_note}};
}

std::vector<double> axis(double lo, double hi, double step, const char* name) {
  if (!(lo > 0.0) || !(hi >= lo) || !(step > 0.0)) {
    throw DomainError(std::string(name) + " range must satisfy 0 < min <= max and step > 0");
  }
  std::vector<double> out;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    // Rounded to 12 decimals so 0.1 + 9 * 0.1 lands on 1.
    const double v = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
    out.push_back(v);
  }
  return out;
}

int execute(const std::string& command, const Options& o, std::ostream& out) {
  const Format format =
      o.format.empty()
          ? ((command == "classify" || command == "verify") ? Format::Json : Format::Csv)
          : (o.format == "json" ? Format::Json : Format::Csv);
  Emitter emit(out, format);
  const MixtureParams params = MixtureParams::make(o.r, o.lambda);
  const EvalProfile profile = make_profile(o);

  if (command == "table") {
    const std::vector<double> xs = axis(o.x_min, o.x_max, o.x_step, "x");
    const std::vector<double> ys = axis(o.y_min, o.y_max, o.y_step, "y");
    for (double xv : xs) {
      for (double yv : ys) {
        const PowerPair power = PowerPair::make(xv, yv);
        const MembershipVerdict v = classify(params, power, o.strict_theorem);
        Row row{{"x", power.x},
                {"y", power.y},
                {"big_r", params.big_r},
                {"member", v.member},
                {"branch", std::string(to_string(v.branch))}};
        if (o.no_scan) {
          emit.emit(row);
          continue;
        }
        const ScanReport s = positivity_scan(params, power, profile);
        row.emplace_back("scan_verdict", std::string(to_string(s.verdict)));
        row.emplace_back("min_value", s.min_value);
        row.emplace_back("min_log10_abs", s.min_signed.log10_magnitude());
        row.emplace_back("witness_t", s.witness_t);
        emit.emit(row);
      }
    }
    return kOk;
  }

  const PowerPair power = PowerPair::make(o.x, o.y);

  if (command == "density") {
    if (o.t.empty()) throw DomainError("density requires --t");
    for (double t : o.t) emit.emit({{"t", t}, {"density", density(t, params, power)}});
  } else if (command == "cdf") {
    if (o.t.empty()) throw DomainError("cdf requires --t");
    for (double t : o.t) emit.emit({{"t", t}, {"cdf", cdf(t, params, power)}});
  } else if (command == "quantile") {
    if (o.u.empty()) throw DomainError("quantile requires --u");
    for (double u : o.u) emit.emit({{"u", u}, {"quantile", quantile(u, params, power)}});
  } else if (command == "transform") {
    if (o.z.empty()) throw DomainError("transform requires --z");
    for (double z : o.z) {
      emit.emit({{"z", z}, {"laplace_transform", laplace_transform(z, params, power)}});
    }
  } else if (command == "sample") {
    if (o.n == 0) throw DomainError("sample requires --n >= 1");
    const std::vector<double> draws = sample(o.n, params, power, profile);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      emit.emit({{"index", static_cast<std::int64_t>(i)}, {"value", draws[i]}});
    }
  } else if (command == "classify") {
    const MembershipVerdict v = classify(params, power, o.strict_theorem);
    const StripZero sz = strip_zero(params);
    emit.emit({{"member", v.member},
               {"branch", std::string(to_string(v.branch))},
               {"theorem_case", std::string(to_string(v.theorem_case))},
               {"x", power.x},
               {"y", power.y},
               {"big_r", params.big_r},
               {"k0", power.k0},
               {"strip_zero_real", sz.real_part},
               {"strip_zero_imag", sz.imag_part},
               {"strip_zero_in_strip", sz.in_strip}});
  } else if (command == "scan") {
    const ScanReport s = positivity_scan(params, power, profile);
    emit.emit(scan_row(power, s));
    if (o.strict && s.verdict != ScanVerdict::NONNEGATIVE_ON_GRID) return kCheckFailed;
  } else if (command == "verify") {
    const std::vector<OracleReport> reports = run_oracle_suite(params, power, o.samples, profile);
    bool all_passed = true;
    for (const OracleReport& r : reports) {
      emit.emit(report_row(r));
      all_passed = all_passed && r.passed;
    }
    if (o.strict && !all_passed) return kCheckFailed;
  }
  return kOk;
}

void add_params(CLI::App* sub, Options& o, bool needs_power) {
  sub->add_option("--r", o.r, "Bernoulli success probability in (0, 1)")->required();
  sub->add_option("--lambda", o.lambda, "Gamma rate, > 0")->required();
  if (needs_power) {
    sub->add_option("--x", o.x, "Bernoulli power, > 0")->required();
    sub->add_option("--y", o.y, "Gamma shape exponent, > 0")->required();
  }
  sub->add_option("--abs-tol", o.abs_tol, "Absolute tolerance in density units");
  sub->add_option("--horizon", o.horizon, "Scan/integration horizon (default: per pair)");
  sub->add_option("--quad-budget", o.quad_budget, "Maximum quadrature subdivisions");
  sub->add_option("--seed", o.seed, "RNG seed (FRACPOW_SEED overrides)");
  sub->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", o.output, "Output file (default stdout)");
}

void report_failure(std::ostream& err, const char* kind, const std::string& reason) {
  std::string one_line = reason;
  for (char& c : one_line) {
    if (c == '\n') c = ' ';
  }
  err << "error: kind=" << kind << " reason=\"" << one_line << "\"\n";
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional convolution powers of Bernoulli * Gamma", "fracpow"};
  app.require_subcommand(1);
  Options o;

  auto* density_cmd = app.add_subcommand("density", "Evaluate the density at --t");
  add_params(density_cmd, o, true);
  density_cmd->add_option("--t", o.t, "Time point(s)")->expected(1, -1);

  auto* cdf_cmd = app.add_subcommand("cdf", "Evaluate the CDF at --t (members only)");
  add_params(cdf_cmd, o, true);
  cdf_cmd->add_option("--t", o.t, "Time point(s)")->expected(1, -1);

  auto* quantile_cmd = app.add_subcommand("quantile", "Quantile at --u (members only)");
  add_params(quantile_cmd, o, true);
  quantile_cmd->add_option("--u", o.u, "Probability level(s) in (0, 1)")->expected(1, -1);

  auto* transform_cmd = app.add_subcommand("transform", "Laplace transform at --z < lambda");
  add_params(transform_cmd, o, true);
  transform_cmd->add_option("--z", o.z, "Transform argument(s)")->expected(1, -1);

  auto* sample_cmd = app.add_subcommand("sample", "Draw --n samples (members only)");
  add_params(sample_cmd, o, true);
  sample_cmd->add_option("--n", o.n, "Number of samples");

  auto* classify_cmd = app.add_subcommand("classify", "Decide membership of (x, y)");
  add_params(classify_cmd, o, true);
  classify_cmd->add_flag("--strict-theorem", o.strict_theorem,
                         "Apply clause a) literally (integer x with y < 1 rejected when R <= 1)");

  auto* scan_cmd = app.add_subcommand("scan", "Numerical positivity scan of the density");
  add_params(scan_cmd, o, true);
  scan_cmd->add_flag("--strict", o.strict, "Exit 2 unless the scan is nonnegative");

  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite (members only)");
  add_params(verify_cmd, o, true);
  verify_cmd->add_option("--samples", o.samples, "Sample size for the KS check (>= 10^4)");
  verify_cmd->add_flag("--strict", o.strict, "Exit 2 if any check fails");

  auto* table_cmd = app.add_subcommand("table", "Membership and scan raster over an (x, y) grid");
  add_params(table_cmd, o, false);
  table_cmd->add_option("--x-min", o.x_min);
  table_cmd->add_option("--x-max", o.x_max);
  table_cmd->add_option("--x-step", o.x_step);
  table_cmd->add_option("--y-min", o.y_min);
  table_cmd->add_option("--y-max", o.y_max);
  table_cmd->add_option("--y-step", o.y_step);
  table_cmd->add_flag("--no-scan", o.no_scan, "Classify only");
  table_cmd->add_flag("--strict-theorem", o.strict_theorem, "Literal clause a)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_failure(err, "validation", e.what());
    return kValidationError;
  }

  if (const char* env = std::getenv("FRACPOW_SEED")) {
    const std::string_view text(env);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      report_failure(err, "validation", "FRACPOW_SEED is not an unsigned integer");
      return kValidationError;
    }
    o.seed = seed;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (o.output.empty()) return execute(command, o, out);
    std::ostringstream buffer;
    const int code = execute(command, o, buffer);
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw DomainError("cannot open output file " + o.output);
    file << buffer.str();
    return code;
  } catch (const DomainError& e) {
    report_failure(err, "validation", e.what());
    return kValidationError;
  } catch (const MembershipError& e) {
    report_failure(err, "membership", e.what());
    return kValidationError;
  } catch (const BudgetError& e) {
    report_failure(err, "budget", e.what());
    return kBudgetExhausted;
  } catch (const ConvergenceError& e) {
    report_failure(err, "budget", e.what());
    return kBudgetExhausted;
  } catch (const std::exception& e) {
    report_failure(err, "internal", e.what());
    return kValidationError;
  }
}

}  // namespace fracpow::cli
