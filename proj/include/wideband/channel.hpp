#ifndef WIDEBAND_CHANNEL_HPP
#define WIDEBAND_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wideband/errors.hpp"
#include "wideband/monotone_cubic.hpp"
#include "wideband/numdiff.hpp"

namespace wideband {

enum class ChannelKind { awgn, tabulated };

/// First two derivatives of the capacity function at zero SNR. Every
/// closed-form quantity downstream (Shannon limit, slopes, approximations)
/// is a function of this pair.
struct DerivativesAtZero {
  DerivativesAtZero(double slope_at_zero, double curvature_at_zero)
      : slope(slope_at_zero), curvature(curvature_at_zero) {
    if (!std::isfinite(slope) || slope <= 0.0)
      throw invalid_channel_error("capacity slope at zero SNR must be positive and finite");
    if (!std::isfinite(curvature) || curvature >= 0.0)
      throw invalid_channel_error("capacity curvature at zero SNR must be negative and finite");
  }
  double slope;      ///< C'(0), b/s/Hz per unit SNR
  double curvature;  ///< C''(0), b/s/Hz per unit SNR^2
};

struct CapacitySample {
  double snr;
  double capacity;
};

/// Capacity of an AWGN channel with the given power gain, b/s/Hz.
inline double awgn_capacity(double gain, double snr) {
  if (!std::isfinite(gain) || gain <= 0.0)
    throw std::domain_error("awgn capacity: gain must be positive and finite");
  if (!std::isfinite(snr) || snr < 0.0)
    throw std::domain_error("awgn capacity: snr must be nonnegative and finite");
  return std::numbers::log2e * std::log1p(gain * snr);
}

/// A channel capacity model: either the AWGN closed form or a table of
/// (snr, capacity) samples interpolated by a monotone cubic. Immutable after
/// construction and safe to share across threads.
class ChannelModel {
public:
  static ChannelModel awgn(double gain) {
    if (!std::isfinite(gain) || gain <= 0.0)
      throw invalid_channel_error("awgn channel: gain must be positive and finite");
    ChannelModel m;
    m.kind_ = ChannelKind::awgn;
    m.gain_ = gain;
    return m;
  }

  static ChannelModel tabulated(std::vector<CapacitySample> samples,
                                std::optional<DerivativesAtZero> declared_derivs = std::nullopt) {
    if (samples.size() < 2)
      throw invalid_channel_error("tabulated channel: need at least two samples");
    if (samples.front().snr != 0.0 || samples.front().capacity != 0.0)
      throw invalid_channel_error("tabulated channel: first sample must be (0, 0)");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!std::isfinite(samples[i].snr) || !std::isfinite(samples[i].capacity))
        throw invalid_channel_error("tabulated channel: non-finite sample");
      if (i > 0 && !(samples[i].snr > samples[i - 1].snr))
        throw invalid_channel_error("tabulated channel: snr values must be strictly increasing");
      if (i > 0 && !(samples[i].capacity > samples[i - 1].capacity))
        throw invalid_channel_error(
            "tabulated channel: capacity values must be strictly increasing after the first sample");
    }
    std::vector<double> x(samples.size()), y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      x[i] = samples[i].snr;
      y[i] = samples[i].capacity;
    }
    ChannelModel m;
    m.kind_ = ChannelKind::tabulated;
    m.samples_ = std::move(samples);
    m.declared_ = declared_derivs;
    m.interp_.emplace(std::move(x), std::move(y));
    return m;
  }

  ChannelKind kind() const noexcept { return kind_; }

  double gain() const {
    if (kind_ != ChannelKind::awgn) throw std::logic_error("gain is defined for awgn models only");
    return gain_;
  }

  /// Largest SNR the model can be evaluated at (infinite for awgn).
  double domain_max() const noexcept {
    return kind_ == ChannelKind::awgn ? std::numeric_limits<double>::infinity()
                                      : interp_->x_max();
  }

  const std::vector<CapacitySample>& samples() const {
    if (kind_ != ChannelKind::tabulated)
      throw std::logic_error("samples are defined for tabulated models only");
    return samples_;
  }

  const std::optional<DerivativesAtZero>& declared_derivatives() const noexcept { return declared_; }

  /// True when derivatives at zero must be estimated from the samples.
  bool derivatives_estimated() const noexcept {
    return kind_ == ChannelKind::tabulated && !declared_.has_value();
  }

  const MonotoneCubic& interpolant() const {
    if (kind_ != ChannelKind::tabulated)
      throw std::logic_error("interpolant is defined for tabulated models only");
    return *interp_;
  }

private:
  ChannelModel() = default;

  ChannelKind kind_ = ChannelKind::awgn;
  double gain_ = 1.0;
  std::vector<CapacitySample> samples_;
  std::optional<DerivativesAtZero> declared_;
  std::optional<MonotoneCubic> interp_;
};

/// Capacity of the model at the given SNR, b/s/Hz.
inline double capacity(const ChannelModel& model, double snr) {
  if (!std::isfinite(snr) || snr < 0.0)
    throw std::domain_error("capacity: snr must be nonnegative and finite");
  if (model.kind() == ChannelKind::awgn) return awgn_capacity(model.gain(), snr);
  if (snr > model.domain_max())
    throw std::out_of_range("capacity: snr beyond the last tabulated sample");
  return model.interpolant()(snr);
}

/// First derivative of the capacity function at the given SNR.
inline double capacity_derivative(const ChannelModel& model, double snr) {
  if (!std::isfinite(snr) || snr < 0.0)
    throw std::domain_error("capacity derivative: snr must be nonnegative and finite");
  if (model.kind() == ChannelKind::awgn) {
    const double g = model.gain();
    return std::numbers::log2e * g / (1.0 + g * snr);
  }
  if (snr > model.domain_max())
    throw std::out_of_range("capacity derivative: snr beyond the last tabulated sample");
  return model.interpolant().derivative(snr);
}

/// Second derivative of the capacity function at the given SNR.
inline double capacity_second_derivative(const ChannelModel& model, double snr) {
  if (!std::isfinite(snr) || snr < 0.0)
    throw std::domain_error("capacity curvature: snr must be nonnegative and finite");
  if (model.kind() == ChannelKind::awgn) {
    const double g = model.gain();
    const double u = 1.0 + g * snr;
    return -std::numbers::log2e * g * g / (u * u);
  }
  if (snr > model.domain_max())
    throw std::out_of_range("capacity curvature: snr beyond the last tabulated sample");
  return model.interpolant().second_derivative(snr);
}

/// Derivatives of the capacity function at zero SNR. AWGN models use the
/// closed form; tabulated models return their declared pair or fall back to
/// finite differences on the interpolant. An estimate whose sign cannot be
/// certified against its own error bar is rejected, so an exactly linear
/// capacity table (zero curvature) fails here rather than downstream.
inline DerivativesAtZero derivatives_at_zero(const ChannelModel& model) {
  if (model.kind() == ChannelKind::awgn) {
    const double g = model.gain();
    return {g * std::numbers::log2e, -g * g * std::numbers::log2e};
  }
  if (model.declared_derivatives()) return *model.declared_derivatives();

  StepSchedule schedule;
  schedule.initial_step = std::min(1e-2, model.domain_max() / 4.0);
  const auto& f = model.interpolant();
  const auto d1 = fd_first_derivative_at_zero(f, schedule);
  const auto d2 = fd_second_derivative_at_zero(f, schedule);
  if (!(d1.value - d1.error_estimate > 0.0))
    throw invalid_channel_error("tabulated channel: estimated capacity slope at zero is not positive");
  if (!(d2.value + d2.error_estimate < 0.0))
    throw invalid_channel_error("tabulated channel: estimated capacity curvature at zero is not negative");
  return {d1.value, d2.value};
}

}  // namespace wideband

#endif
