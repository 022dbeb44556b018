#ifndef WIDEBAND_VALIDATE_HPP
#define WIDEBAND_VALIDATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wideband/approx.hpp"
#include "wideband/channel.hpp"
#include "wideband/tradeoff.hpp"

namespace wideband {

/// Outcome of one relationship check. Violations are signed: negative values
/// are margin, positive values are genuine violations. The bound and sandwich
/// checks pass when worst_violation <= tolerance; the convexity probe demands
/// strict positivity of every second difference and therefore passes only
/// when worst_violation < tolerance.
struct ValidationReport {
  std::string check_name;
  bool passed;
  double worst_violation;
  double worst_gamma_db;
  int n_points;
  double tolerance;
};

struct SandwichReport {
  ValidationReport overall;
  int prefix_points;            ///< longest prefix of the curve on which both bounds hold
  double prefix_end_gamma_db;   ///< gamma of the last prefix point (gamma of the first
                                ///< curve point when the prefix is empty)
};

struct ErrorRow {
  double gamma_db;
  double err_affine;     ///< affine estimate minus truth
  double err_nonlinear;  ///< nonlinear estimate minus truth
  double err_averaged;   ///< averaged estimate minus truth
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  double max_abs_err_affine = 0.0;
  double max_abs_err_nonlinear = 0.0;
  double max_abs_err_averaged = 0.0;
};

/// Checks that the nonlinear estimate stays at or below the true curve at
/// every point: worst_violation = max(nonlinear - se_true).
inline ValidationReport check_lower_bound(const EfficiencyCurve& curve,
                                          const DerivativesAtZero& derivs, double tol) {
  if (curve.points.empty()) throw std::invalid_argument("check_lower_bound: empty curve");
  double worst = -std::numeric_limits<double>::infinity();
  double worst_gamma = curve.points.front().gamma_db;
  for (const auto& p : curve.points) {
    const double violation = nonlinear_estimate_db(derivs, p.gamma_db) - p.se;
    if (violation > worst) {
      worst = violation;
      worst_gamma = p.gamma_db;
    }
  }
  return {"lower_bound", worst <= tol, worst, worst_gamma,
          static_cast<int>(curve.points.size()), tol};
}

/// Checks both bracketing inequalities pointwise:
///   nonlinear <= se_true  and  se_true <= inflated affine.
/// Reports the longest passing prefix in gamma alongside the worst violation
/// over the whole curve.
inline SandwichReport check_sandwich(const EfficiencyCurve& curve, const DerivativesAtZero& derivs,
                                     double epsilon, double tol) {
  if (curve.points.empty()) throw std::invalid_argument("check_sandwich: empty curve");
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw std::domain_error("check_sandwich: epsilon must be nonnegative and finite");
  double worst = -std::numeric_limits<double>::infinity();
  double worst_gamma = curve.points.front().gamma_db;
  int prefix = 0;
  bool prefix_open = true;
  double prefix_end = curve.points.front().gamma_db;
  for (const auto& p : curve.points) {
    const double lower = nonlinear_estimate_db(derivs, p.gamma_db) - p.se;
    const double upper = p.se - inflated_affine_estimate(derivs, p.gamma_db, epsilon);
    const double violation = std::max(lower, upper);
    if (violation > worst) {
      worst = violation;
      worst_gamma = p.gamma_db;
    }
    if (prefix_open && violation <= tol) {
      ++prefix;
      prefix_end = p.gamma_db;
    } else {
      prefix_open = false;
    }
  }
  ValidationReport overall{"sandwich", worst <= tol, worst, worst_gamma,
                           static_cast<int>(curve.points.size()), tol};
  return {overall, prefix, prefix_end};
}

/// Probes local convexity of a spectral-efficiency curve in the dB domain:
/// central second differences on (gamma_min, gamma_min + span] at the given
/// step must all be strictly positive to pass.
inline ValidationReport convexity_probe(const std::function<double(double)>& se_of_gamma,
                                        double gamma_min_db, double span_db, double step_db) {
  if (!(span_db > 0.0) || !std::isfinite(span_db))
    throw std::invalid_argument("convexity_probe: span must be positive and finite");
  if (!(step_db > 0.0) || !(step_db <= span_db / 4.0))
    throw std::invalid_argument("convexity_probe: step must be positive and at most span/4");
  const int m = static_cast<int>(std::floor(span_db / step_db + 1e-9));
  std::vector<double> se(static_cast<std::size_t>(m) + 1);
  for (int j = 1; j <= m; ++j) se[static_cast<std::size_t>(j)] = se_of_gamma(gamma_min_db + j * step_db);
  double min_diff = std::numeric_limits<double>::infinity();
  double min_gamma = gamma_min_db + 2 * step_db;
  int n_diffs = 0;
  for (int j = 2; j + 1 <= m; ++j) {
    const double d = se[static_cast<std::size_t>(j) + 1] - 2.0 * se[static_cast<std::size_t>(j)] +
                     se[static_cast<std::size_t>(j) - 1];
    ++n_diffs;
    if (d < min_diff) {
      min_diff = d;
      min_gamma = gamma_min_db + j * step_db;
    }
  }
  const double worst = -min_diff;
  return {"convexity", worst < 0.0, worst, min_gamma, n_diffs, 0.0};
}

/// Convenience overload probing the model's true curve.
inline ValidationReport convexity_probe(const ChannelModel& model, double span_db,
                                        double step_db) {
  const auto derivs = derivatives_at_zero(model);
  const auto limit = shannon_limit(derivs);
  return convexity_probe(
      [&](double gamma_db) {
        return detail::invert_ebn0(model, std::pow(10.0, gamma_db / 10.0), derivs).se;
      },
      limit.gamma_min_db, span_db, step_db);
}

/// Compares the one-sided numerical slope of the true curve at the limit
/// against the closed-form wideband slope; worst_violation is the relative
/// deviation, passing within 1e-3.
inline ValidationReport check_slope_equality(const ChannelModel& model,
                                             const DerivativesAtZero& derivs, double eps_db) {
  if (!(eps_db >= 1e-8) || !(eps_db <= 1e-2))
    throw std::invalid_argument("check_slope_equality: eps_db must lie in [1e-8, 1e-2]");
  const auto limit = shannon_limit(derivs);
  const double gamma = limit.gamma_min_db + eps_db;
  const double se = detail::invert_ebn0(model, std::pow(10.0, gamma / 10.0), derivs).se;
  const double slope_ref = wideband_slope(derivs).per_db;
  const double rel_dev = std::abs(se / eps_db - slope_ref) / slope_ref;
  return {"slope_equality", rel_dev <= 1e-3, rel_dev, gamma, 1, 1e-3};
}

/// Signed errors (estimate minus truth) of the three estimates at every curve
/// point, plus the grid maxima of their magnitudes.
inline ErrorReport error_report(const EfficiencyCurve& curve, const DerivativesAtZero& derivs) {
  ErrorReport report;
  report.rows.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    const auto eval = evaluate_all(derivs, p.gamma_db);
    ErrorRow row{p.gamma_db, eval.affine - p.se, eval.nonlinear - p.se, eval.averaged - p.se};
    report.max_abs_err_affine = std::max(report.max_abs_err_affine, std::abs(row.err_affine));
    report.max_abs_err_nonlinear =
        std::max(report.max_abs_err_nonlinear, std::abs(row.err_nonlinear));
    report.max_abs_err_averaged =
        std::max(report.max_abs_err_averaged, std::abs(row.err_averaged));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace wideband

#endif
