#ifndef WIDEBAND_TRADEOFF_HPP
#define WIDEBAND_TRADEOFF_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "wideband/channel.hpp"
#include "wideband/errors.hpp"

namespace wideband {

/// One sampled point of the spectral-efficiency-versus-energy-per-bit curve.
/// Invariant: ebn0 * se == snr up to solver residual (1e-12 relative).
struct TradeoffPoint {
  double snr;       ///< SNR at which the channel operates
  double se;        ///< spectral efficiency, b/s/Hz
  double ebn0;      ///< energy per bit over noise density, linear
  double gamma_db;  ///< ebn0 in dB
};

struct EfficiencyCurve {
  ChannelModel channel;
  std::vector<TradeoffPoint> points;  ///< ordered by gamma_db, strictly increasing
};

struct ShannonLimit {
  double ebn0_min;      ///< minimum energy per bit, linear
  double gamma_min_db;  ///< minimum energy per bit, dB
};

struct WidebandSlope {
  double linear;  ///< d(se)/d(ebn0) at the limit, b/s/Hz per unit ebn0
  double per_db;  ///< d(se)/d(gamma) at the limit, b/s/Hz per dB
};

/// Minimum energy per bit for reliable communication: the reciprocal of the
/// capacity slope at zero SNR.
inline ShannonLimit shannon_limit(const DerivativesAtZero& derivs) {
  const double ebn0_min = 1.0 / derivs.slope;
  return {ebn0_min, 10.0 * std::log10(ebn0_min)};
}

/// Slope of the spectral-efficiency curve at the Shannon limit, in both the
/// linear and the dB parameterization.
inline WidebandSlope wideband_slope(const DerivativesAtZero& derivs) {
  const double c1 = derivs.slope;
  const double c2 = derivs.curvature;
  return {-2.0 * c1 * c1 * c1 / c2, -std::numbers::ln10 * c1 * c1 / (5.0 * c2)};
}

/// Derivative of the energy-per-bit function ebn0(snr) at zero SNR.
inline double ebn0_derivative_at_zero(const DerivativesAtZero& derivs) {
  return -derivs.curvature / (2.0 * derivs.slope * derivs.slope);
}

/// Energy per bit required at the given SNR; at snr = 0 this is the Shannon
/// limit itself.
inline double ebn0_of_snr(const ChannelModel& model, double snr) {
  if (!std::isfinite(snr) || snr < 0.0)
    throw std::domain_error("ebn0_of_snr: snr must be nonnegative and finite");
  if (snr == 0.0) return 1.0 / derivatives_at_zero(model).slope;
  const double c = capacity(model, snr);
  if (!(c > 0.0)) throw invalid_channel_error("ebn0_of_snr: capacity is zero at positive snr");
  return snr / c;
}

/// Second derivative of ebn0(snr), evaluated as the quotient
///   [-snr*C*C'' - 2*C*C' + 2*snr*C'^2] / C^3.
/// Undefined at snr = 0, where the quotient degenerates to 0/0.
inline double ebn0_second_derivative(const ChannelModel& model, double snr) {
  if (!std::isfinite(snr) || snr <= 0.0)
    throw std::domain_error("ebn0_second_derivative: snr must be strictly positive");
  if (snr >= model.domain_max())
    throw std::out_of_range("ebn0_second_derivative: snr must lie strictly inside the model domain");
  const double c = capacity(model, snr);
  const double cp = capacity_derivative(model, snr);
  const double cpp = capacity_second_derivative(model, snr);
  const double num = -snr * c * cpp - 2.0 * c * cp + 2.0 * snr * cp * cp;
  return num / (c * c * c);
}

namespace detail {

struct CurveSolution {
  double snr;
  double se;
};

// Inverts ebn0(snr) = target by bracket doubling followed by bisection.
// ebn0(snr) is strictly increasing near zero because its derivative at zero
// is positive; the bracket search copes with any monotone growth beyond.
inline CurveSolution invert_ebn0(const ChannelModel& model, double target,
                                 const DerivativesAtZero& derivs) {
  const double h_min = 1.0 / derivs.slope;
  if (!std::isfinite(target) || target <= 0.0)
    throw std::domain_error("spectral efficiency: ebn0 must be positive and finite");
  if (target < h_min * (1.0 - 1e-12))
    throw no_solution_error("spectral efficiency: ebn0 below the Shannon limit");
  if (target <= h_min * (1.0 + 1e-12)) return {0.0, 0.0};

  const auto h = [&](double snr) { return snr / capacity(model, snr); };
  const double dmax = model.domain_max();

  // start from the tangent-line estimate, then double until the target is
  // bracketed (or the tabulated domain runs out)
  double hi = (target - h_min) / ebn0_derivative_at_zero(derivs);
  if (!(hi > 0.0) || !std::isfinite(hi)) hi = 1e-8;
  if (hi > dmax) hi = dmax;
  double lo = 0.0;
  for (int grow = 0; h(hi) < target; ++grow) {
    if (grow > 200) throw solver_error("spectral efficiency: bracket search failed");
    lo = hi;
    hi *= 2.0;
    if (hi >= dmax) {
      hi = dmax;
      if (h(hi) < target)
        throw std::out_of_range("spectral efficiency: ebn0 beyond the tabulated domain");
      break;
    }
  }

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo) || !(mid < hi)) break;
    if (h(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  double snr = hi;
  if (lo > 0.0 && std::abs(h(lo) - target) < std::abs(h(hi) - target)) snr = lo;
  if (!(std::abs(h(snr) - target) <= 1e-12 * target)) {
    // never saw h below the target: the data cannot resolve ebn0 this close
    // to the estimated limit (tabulated first-segment slope bounds h away
    // from 1/C'(0))
    if (lo == 0.0)
      throw no_solution_error(
          "spectral efficiency: ebn0 below the limit resolvable from the tabulated samples");
    throw solver_error("spectral efficiency: residual tolerance not met");
  }
  return {snr, capacity(model, snr)};
}

}  // namespace detail

/// Spectral efficiency attainable at the given energy per bit, found by
/// inverting ebn0(snr) numerically. At the Shannon limit the result is 0.
inline double true_spectral_efficiency(const ChannelModel& model, double ebn0) {
  return detail::invert_ebn0(model, ebn0, derivatives_at_zero(model)).se;
}

/// AWGN-only cross-check path: solves the implicit equation
///   se = log2(e) * ln(1 + gain * ebn0 * se)
/// for its positive root by bisection. Independent of the ebn0-inversion
/// route, so the two can be compared point by point.
inline double awgn_implicit_spectral_efficiency(double gain, double ebn0) {
  if (!std::isfinite(gain) || gain <= 0.0)
    throw std::domain_error("implicit spectral efficiency: gain must be positive and finite");
  if (!std::isfinite(ebn0) || ebn0 <= 0.0)
    throw std::domain_error("implicit spectral efficiency: ebn0 must be positive and finite");
  const double h_min = 1.0 / (gain * std::numbers::log2e);
  if (ebn0 < h_min * (1.0 - 1e-12))
    throw no_solution_error("implicit spectral efficiency: ebn0 below the Shannon limit");
  if (ebn0 <= h_min * (1.0 + 1e-12)) return 0.0;

  // g(se) = log2e*ln(1 + gain*ebn0*se) - se has g'(0) > 0 above the limit and
  // g -> -infinity, so the positive root is bracketed once g(lo) > 0.
  const auto g = [&](double se) { return std::numbers::log2e * std::log1p(gain * ebn0 * se) - se; };
  double lo = 1.0;
  while (g(lo) <= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;
  }
  double hi = 2.0 * lo;
  for (int grow = 0; g(hi) > 0.0; ++grow) {
    if (grow > 200) throw solver_error("implicit spectral efficiency: bracket search failed");
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo) || !(mid < hi)) break;
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Samples the tradeoff curve: the exact limit point followed by n_points
/// points uniform in gamma over [gamma_min + delta, gamma_min + offset] with
/// delta = offset / (10 * n_points).
inline EfficiencyCurve generate_curve(const ChannelModel& model, double gamma_offset_max_db,
                                      int n_points) {
  if (!(gamma_offset_max_db > 0.0) || !std::isfinite(gamma_offset_max_db))
    throw std::invalid_argument("generate_curve: gamma offset must be positive and finite");
  if (n_points < 2) throw std::invalid_argument("generate_curve: need at least two points");

  const auto derivs = derivatives_at_zero(model);
  const auto limit = shannon_limit(derivs);

  EfficiencyCurve curve{model, {}};
  curve.points.reserve(static_cast<std::size_t>(n_points) + 1);
  curve.points.push_back({0.0, 0.0, limit.ebn0_min, limit.gamma_min_db});

  const double delta = gamma_offset_max_db / (10.0 * n_points);
  const double span = gamma_offset_max_db - delta;
  for (int i = 0; i < n_points; ++i) {
    const double gamma = limit.gamma_min_db + delta + span * i / (n_points - 1);
    const double ebn0 = std::pow(10.0, gamma / 10.0);
    const auto sol = detail::invert_ebn0(model, ebn0, derivs);
    curve.points.push_back({sol.snr, sol.se, ebn0, gamma});
  }
  return curve;
}

}  // namespace wideband

#endif
