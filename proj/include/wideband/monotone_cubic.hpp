#ifndef WIDEBAND_MONOTONE_CUBIC_HPP
#define WIDEBAND_MONOTONE_CUBIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wideband {

/// Monotonicity-preserving piecewise-cubic Hermite interpolant.
///
/// Node tangents are chosen with the Fritsch-Butland weighted harmonic mean,
/// which keeps every cubic piece inside the monotone region of the Hermite
/// parameter space: strictly increasing data yield a strictly increasing
/// interpolant, so the curve can be inverted safely.
///
/// First and second derivatives of the cubic pieces are exposed. The second
/// derivative is piecewise linear and may jump at the nodes.
class MonotoneCubic {
public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) throw std::invalid_argument("monotone cubic: x/y size mismatch");
    if (x_.size() < 2) throw std::invalid_argument("monotone cubic: need at least two nodes");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
        throw std::invalid_argument("monotone cubic: non-finite node");
      if (i > 0 && !(x_[i] > x_[i - 1]))
        throw std::invalid_argument("monotone cubic: x values must be strictly increasing");
    }
    compute_tangents();
  }

  double x_min() const noexcept { return x_.front(); }
  double x_max() const noexcept { return x_.back(); }

  /// Interpolated value. Throws std::out_of_range outside [x_min, x_max].
  double operator()(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return y_[k] * (2.0 * t3 - 3.0 * t2 + 1.0) + h * m_[k] * (t3 - 2.0 * t2 + t) +
           y_[k + 1] * (3.0 * t2 - 2.0 * t3) + h * m_[k + 1] * (t3 - t2);
  }

  /// First derivative of the interpolant.
  double derivative(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    const double dp = y_[k] * (6.0 * t2 - 6.0 * t) + h * m_[k] * (3.0 * t2 - 4.0 * t + 1.0) +
                      y_[k + 1] * (6.0 * t - 6.0 * t2) + h * m_[k + 1] * (3.0 * t2 - 2.0 * t);
    return dp / h;
  }

  /// Second derivative of the cubic piece containing x (piecewise linear in x).
  double second_derivative(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double ddp = y_[k] * (12.0 * t - 6.0) + h * m_[k] * (6.0 * t - 4.0) +
                       y_[k + 1] * (6.0 - 12.0 * t) + h * m_[k + 1] * (6.0 * t - 2.0);
    return ddp / (h * h);
  }

private:
  void compute_tangents() {
    const std::size_t n = x_.size();
    std::vector<double> d(n - 1), h(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      d[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    m_.assign(n, 0.0);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double prod = d[k - 1] * d[k];
      if (prod > 0.0) {
        const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
        m_[k] = prod / (a * d[k] + (1.0 - a) * d[k - 1]);
      }
      // secant slopes of opposite sign force a flat tangent
    }
  }

  std::size_t segment(double x) const {
    if (!std::isfinite(x) || x < x_.front() || x > x_.back())
      throw std::out_of_range("monotone cubic: evaluation point outside the node range");
    if (x >= x_[x_.size() - 2]) return x_.size() - 2;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace wideband

#endif
