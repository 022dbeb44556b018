#ifndef WIDEBAND_CLI_HPP
#define WIDEBAND_CLI_HPP

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wideband/approx.hpp"
#include "wideband/channel.hpp"
#include "wideband/errors.hpp"
#include "wideband/text_format.hpp"
#include "wideband/tradeoff.hpp"
#include "wideband/validate.hpp"

namespace wideband::cli {

enum class Command { analyze, curve, validate };
enum class OutputFormat { csv, json };

/// Resolved configuration for one command invocation. Output is a pure
/// function of this struct: identical configs produce identical bytes.
struct RunConfig {
  Command command = Command::analyze;
  ChannelModel channel = ChannelModel::awgn(1.0);
  double gamma_offset_max_db = 10.0;
  int n_points = 200;
  double epsilon = 0.01;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> output_path;
  double tolerance = 1e-9;          // bound/sandwich checks, b/s/Hz
  double convexity_span_db = 1.0;
  double convexity_step_db = 0.05;
  double slope_eps_db = 1e-4;
  bool require_convexity = false;   // gate the exit code on the convexity probe
};

namespace detail {

inline void check_config(const RunConfig& config) {
  if (!(config.gamma_offset_max_db > 0.0) || !std::isfinite(config.gamma_offset_max_db))
    throw std::invalid_argument("config: gamma offset must be positive");
  if (config.n_points < 2) throw std::invalid_argument("config: need at least two points");
  if (!(config.epsilon >= 0.0) || !std::isfinite(config.epsilon))
    throw std::invalid_argument("config: epsilon must be nonnegative");
  if (!(config.tolerance >= 0.0) || !std::isfinite(config.tolerance))
    throw std::invalid_argument("config: tolerance must be nonnegative");
}

inline std::string json_field(const char* key, const std::string& value, bool last = false) {
  return std::string("  \"") + key + "\": " + value + (last ? "\n" : ",\n");
}

}  // namespace detail

/// Closed-form channel summary: derivatives at zero, Shannon limit, slopes.
inline std::string render_analyze(const RunConfig& config) {
  const auto derivs = derivatives_at_zero(config.channel);
  const auto limit = shannon_limit(derivs);
  const auto slope = wideband_slope(derivs);
  const std::string values[6] = {
      format_number(derivs.slope),     format_number(derivs.curvature),
      format_number(limit.ebn0_min),   format_number(limit.gamma_min_db),
      format_number(slope.linear),     format_number(slope.per_db)};
  static constexpr const char* keys[6] = {"c1_prime",     "c2_double_prime", "ebn0_min_linear",
                                          "gamma_min_db", "slope_linear",    "slope_db"};
  std::string out;
  if (config.format == OutputFormat::csv) {
    for (int i = 0; i < 6; ++i) out += std::string(keys[i]) + (i < 5 ? "," : "\n");
    for (int i = 0; i < 6; ++i) out += values[i] + (i < 5 ? "," : "\n");
  } else {
    out += "{\n";
    for (int i = 0; i < 6; ++i) out += detail::json_field(keys[i], values[i], i == 5);
    out += "}\n";
  }
  return out;
}

/// The sampled tradeoff curve with every estimate alongside the truth.
/// Each row is recomputed against the defining identity ebn0 * se == snr
/// before it is emitted.
inline std::string render_curve(const RunConfig& config) {
  detail::check_config(config);
  const auto derivs = derivatives_at_zero(config.channel);
  const auto curve = generate_curve(config.channel, config.gamma_offset_max_db, config.n_points);

  std::string out;
  if (config.format == OutputFormat::csv)
    out += "gamma_db,ebn0_linear,se_true,se_c1,se_c2,se_avg,se_c1_eps\n";
  else
    out += "{\n  \"points\": [\n";

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (!(std::abs(p.ebn0 * p.se - p.snr) <= 1e-12 * std::max(p.snr, 1e-300)))
      throw solver_error("curve row failed the ebn0*se == snr identity");
    const auto eval = evaluate_all(derivs, p.gamma_db, config.epsilon);
    const std::string cols[7] = {format_number(p.gamma_db), format_number(p.ebn0),
                                 format_number(p.se),       format_number(eval.affine),
                                 format_number(eval.nonlinear), format_number(eval.averaged),
                                 format_number(*eval.inflated)};
    if (config.format == OutputFormat::csv) {
      for (int c = 0; c < 7; ++c) out += cols[c] + (c < 6 ? "," : "\n");
    } else {
      static constexpr const char* keys[7] = {"gamma_db", "ebn0_linear", "se_true", "se_c1",
                                              "se_c2",    "se_avg",      "se_c1_eps"};
      out += "    {";
      for (int c = 0; c < 7; ++c)
        out += std::string("\"") + keys[c] + "\": " + cols[c] + (c < 6 ? ", " : "");
      out += i + 1 < curve.points.size() ? "},\n" : "}\n";
    }
  }
  if (config.format == OutputFormat::json) out += "  ]\n}\n";
  return out;
}

struct ValidateOutcome {
  std::string text;
  bool all_required_passed = false;
};

/// Runs every relationship check on the configured grid and renders a report.
/// The lower-bound, sandwich and slope checks gate the outcome; the convexity
/// probe is informational unless require_convexity is set.
inline ValidateOutcome render_validate(const RunConfig& config) {
  detail::check_config(config);
  const auto derivs = derivatives_at_zero(config.channel);
  const auto curve = generate_curve(config.channel, config.gamma_offset_max_db, config.n_points);

  const auto lower = check_lower_bound(curve, derivs, config.tolerance);
  const auto sandwich = check_sandwich(curve, derivs, config.epsilon, config.tolerance);
  const auto convexity =
      convexity_probe(config.channel, config.convexity_span_db, config.convexity_step_db);
  const auto slope = check_slope_equality(config.channel, derivs, config.slope_eps_db);
  const auto errors = error_report(curve, derivs);

  const bool required_passed = lower.passed && sandwich.overall.passed && slope.passed &&
                               (!config.require_convexity || convexity.passed);

  const auto convexity_required = config.require_convexity;
  const std::string sandwich_info = "prefix_points=" + std::to_string(sandwich.prefix_points) +
                                    ";prefix_end_gamma_db=" +
                                    format_number(sandwich.prefix_end_gamma_db);

  std::string out;
  if (config.format == OutputFormat::csv) {
    out += "check,passed,worst_violation,worst_gamma_db,n_points,tolerance,required,info\n";
    const auto row = [&](const ValidationReport& r, bool required, const std::string& info) {
      out += r.check_name + ',' + format_bool(r.passed) + ',' + format_number(r.worst_violation) +
             ',' + format_number(r.worst_gamma_db) + ',' + std::to_string(r.n_points) + ',' +
             format_number(r.tolerance) + ',' + format_bool(required) + ',' + info + '\n';
    };
    row(lower, true, "");
    row(sandwich.overall, true, sandwich_info);
    row(convexity, convexity_required, "");
    row(slope, true, "");
    out += "\ngamma_db,err_c1,err_c2,err_avg\n";
    for (const auto& r : errors.rows)
      out += format_number(r.gamma_db) + ',' + format_number(r.err_affine) + ',' +
             format_number(r.err_nonlinear) + ',' + format_number(r.err_averaged) + '\n';
    out += "\nmax_abs_err_c1,max_abs_err_c2,max_abs_err_avg\n";
    out += format_number(errors.max_abs_err_affine) + ',' +
           format_number(errors.max_abs_err_nonlinear) + ',' +
           format_number(errors.max_abs_err_averaged) + '\n';
  } else {
    out += "{\n  \"checks\": [\n";
    const auto row = [&](const ValidationReport& r, bool required, const std::string& extra,
                         bool last) {
      out += "    {\"check\": \"" + r.check_name + "\", \"passed\": " + format_bool(r.passed) +
             ", \"worst_violation\": " + format_number(r.worst_violation) +
             ", \"worst_gamma_db\": " + format_number(r.worst_gamma_db) +
             ", \"n_points\": " + std::to_string(r.n_points) +
             ", \"tolerance\": " + format_number(r.tolerance) +
             ", \"required\": " + format_bool(required) + extra + (last ? "}\n" : "},\n");
    };
    row(lower, true, "", false);
    row(sandwich.overall, true,
        ", \"prefix_points\": " + std::to_string(sandwich.prefix_points) +
            ", \"prefix_end_gamma_db\": " + format_number(sandwich.prefix_end_gamma_db),
        false);
    row(convexity, convexity_required, "", false);
    row(slope, true, "", true);
    out += "  ],\n  \"errors\": {\n";
    out += "    \"max_abs_err_c1\": " + format_number(errors.max_abs_err_affine) + ",\n";
    out += "    \"max_abs_err_c2\": " + format_number(errors.max_abs_err_nonlinear) + ",\n";
    out += "    \"max_abs_err_avg\": " + format_number(errors.max_abs_err_averaged) + ",\n";
    out += "    \"rows\": [\n";
    for (std::size_t i = 0; i < errors.rows.size(); ++i) {
      const auto& r = errors.rows[i];
      out += "      [" + format_number(r.gamma_db) + ", " + format_number(r.err_affine) + ", " +
             format_number(r.err_nonlinear) + ", " + format_number(r.err_averaged) +
             (i + 1 < errors.rows.size() ? "],\n" : "]\n");
    }
    out += "    ]\n  },\n";
    out += "  \"all_required_passed\": " + std::string(format_bool(required_passed)) + "\n}\n";
  }
  return {out, required_passed};
}

/// Executes one command: renders, emits the estimated-derivatives warning to
/// the diagnostic stream when applicable, and writes the table to the output
/// path or the primary stream. Returns the process exit code.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  detail::check_config(config);
  if (config.channel.derivatives_estimated())
    diag << "warning: derivatives at zero estimated by finite differences from tabulated "
            "samples; accuracy depends on sample density near zero\n";

  std::string text;
  int code = 0;
  switch (config.command) {
    case Command::analyze:
      text = render_analyze(config);
      break;
    case Command::curve:
      text = render_curve(config);
      break;
    case Command::validate: {
      auto outcome = render_validate(config);
      text = std::move(outcome.text);
      code = outcome.all_required_passed ? 0 : 1;
      break;
    }
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + *config.output_path);
    file << text;
    if (!file) throw std::runtime_error("failed writing output file: " + *config.output_path);
  } else {
    out << text;
  }
  return code;
}

}  // namespace wideband::cli

#endif
