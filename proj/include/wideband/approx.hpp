#ifndef WIDEBAND_APPROX_HPP
#define WIDEBAND_APPROX_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "wideband/channel.hpp"
#include "wideband/tradeoff.hpp"

namespace wideband {

/// Values of the closed-form spectral-efficiency estimates at one gamma.
/// Invariants: averaged == (affine + nonlinear) / 2; everything is 0 at the
/// Shannon limit; inflated >= affine whenever epsilon >= 0.
struct ApproxEvaluation {
  double gamma_db;
  double affine;                    ///< slope-line estimate
  double nonlinear;                 ///< reciprocal-form estimate
  double averaged;                  ///< mean of the two
  std::optional<double> inflated;   ///< slope-line with slope + epsilon
  std::optional<double> epsilon;    ///< b/s/Hz per dB
};

namespace detail {

// Offset above the Shannon limit in dB; a hair of negative slack absorbs
// round trips through the linear domain.
inline double gamma_offset(const DerivativesAtZero& derivs, double gamma_db) {
  if (!std::isfinite(gamma_db)) throw std::domain_error("approximation: gamma must be finite");
  const double offset = gamma_db - shannon_limit(derivs).gamma_min_db;
  if (offset < -1e-9)
    throw std::domain_error("approximation: gamma below the Shannon limit");
  return std::max(offset, 0.0);
}

}  // namespace detail

/// Affine estimate in the dB domain: wideband slope times the dB offset
/// above the Shannon limit.
inline double affine_estimate(const DerivativesAtZero& derivs, double gamma_db) {
  return wideband_slope(derivs).per_db * detail::gamma_offset(derivs, gamma_db);
}

/// Nonlinear estimate in the linear domain:
///   (2 C'(0) / C''(0)) * (1/ebn0 - C'(0)).
inline double nonlinear_estimate(const DerivativesAtZero& derivs, double ebn0) {
  if (!std::isfinite(ebn0) || ebn0 <= 0.0)
    throw std::domain_error("approximation: ebn0 must be positive and finite");
  const double h_min = 1.0 / derivs.slope;
  if (ebn0 < h_min * (1.0 - 1e-12))
    throw std::domain_error("approximation: ebn0 below the Shannon limit");
  const double value = (2.0 * derivs.slope / derivs.curvature) * (1.0 / ebn0 - derivs.slope);
  return std::max(value, 0.0);
}

/// Nonlinear estimate with a dB argument; substitutes ebn0 = 10^(gamma/10).
inline double nonlinear_estimate_db(const DerivativesAtZero& derivs, double gamma_db) {
  detail::gamma_offset(derivs, gamma_db);  // limit check in the dB domain
  return nonlinear_estimate(derivs, std::pow(10.0, gamma_db / 10.0));
}

/// Affine estimate with the slope inflated by epsilon (b/s/Hz per dB).
inline double inflated_affine_estimate(const DerivativesAtZero& derivs, double gamma_db,
                                       double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw std::domain_error("approximation: epsilon must be nonnegative and finite");
  return (wideband_slope(derivs).per_db + epsilon) * detail::gamma_offset(derivs, gamma_db);
}

/// Mean of the affine and nonlinear estimates at the same gamma.
inline double averaged_estimate(const DerivativesAtZero& derivs, double gamma_db) {
  return 0.5 * (affine_estimate(derivs, gamma_db) + nonlinear_estimate_db(derivs, gamma_db));
}

/// Evaluates every estimate at one gamma. The inflated line is present only
/// when epsilon is supplied.
inline ApproxEvaluation evaluate_all(const DerivativesAtZero& derivs, double gamma_db,
                                     std::optional<double> epsilon = std::nullopt) {
  ApproxEvaluation out{gamma_db, 0.0, 0.0, 0.0, std::nullopt, std::nullopt};
  out.affine = affine_estimate(derivs, gamma_db);
  out.nonlinear = nonlinear_estimate_db(derivs, gamma_db);
  out.averaged = 0.5 * (out.affine + out.nonlinear);
  if (epsilon) {
    out.inflated = inflated_affine_estimate(derivs, gamma_db, *epsilon);
    out.epsilon = *epsilon;
  }
  return out;
}

}  // namespace wideband

#endif
