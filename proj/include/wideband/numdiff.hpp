#ifndef WIDEBAND_NUMDIFF_HPP
#define WIDEBAND_NUMDIFF_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wideband/errors.hpp"

namespace wideband {

/// Step schedule for one-sided finite differences at the origin: the base
/// step, the factor it shrinks by per level, and the number of levels fed
/// into the Richardson tableau.
struct StepSchedule {
  double initial_step = 1e-2;
  double shrink_factor = 0.5;
  int levels = 6;
};

struct DerivativeEstimate {
  double value;           ///< Richardson-extrapolated estimate
  double error_estimate;  ///< magnitude of the last diagonal change
};

namespace detail {

inline void check_schedule(const StepSchedule& s) {
  if (!(std::isfinite(s.initial_step)) || s.initial_step <= 0.0)
    throw std::invalid_argument("step schedule: initial_step must be positive and finite");
  if (!(s.shrink_factor > 0.0) || !(s.shrink_factor < 1.0))
    throw std::invalid_argument("step schedule: shrink_factor must lie in (0, 1)");
  if (s.levels < 3 || s.levels > 30)
    throw std::invalid_argument("step schedule: levels must lie in [3, 30]");
}

// Neville-style Richardson tableau for a base estimate whose error expands in
// integer powers of the step. With steps h_k = h0 * t^k the update is
//   T[k][j] = (T[k][j-1] - t^j T[k-1][j-1]) / (1 - t^j).
template <class Base>
DerivativeEstimate richardson(Base&& base, const StepSchedule& s, double rel_tol,
                              double abs_floor) {
  check_schedule(s);
  std::vector<double> prev, row;
  double diag = 0.0, prev_diag = 0.0;
  double h = s.initial_step;
  for (int k = 0; k < s.levels; ++k, h *= s.shrink_factor) {
    row.assign(static_cast<std::size_t>(k) + 1, 0.0);
    row[0] = base(h);
    if (!std::isfinite(row[0]))
      throw std::domain_error("finite differences: non-finite function evaluation");
    double tj = 1.0;
    for (int j = 1; j <= k; ++j) {
      tj *= s.shrink_factor;
      row[j] = (row[j - 1] - tj * prev[j - 1]) / (1.0 - tj);
    }
    prev_diag = diag;
    diag = row.back();
    prev.swap(row);
  }
  const double err = std::abs(diag - prev_diag);
  if (!(err <= rel_tol * std::abs(diag) + abs_floor))
    throw solver_error("finite differences: estimate did not converge");
  return {diag, err};
}

}  // namespace detail

/// One-sided estimate of f'(0) for a function with f(0) = 0 defined on
/// nonnegative arguments. Forward differences on the schedule's steps are
/// refined by Richardson extrapolation.
template <class F>
DerivativeEstimate fd_first_derivative_at_zero(F&& f, const StepSchedule& schedule = {}) {
  const double f0 = f(0.0);
  if (!std::isfinite(f0)) throw std::domain_error("finite differences: f(0) is not finite");
  return detail::richardson([&](double h) { return (f(h) - f0) / h; }, schedule, 1e-4, 1e-12);
}

/// One-sided estimate of f''(0) from the nodes {0, h, 2h}, Richardson-refined.
template <class F>
DerivativeEstimate fd_second_derivative_at_zero(F&& f, const StepSchedule& schedule = {}) {
  const double f0 = f(0.0);
  if (!std::isfinite(f0)) throw std::domain_error("finite differences: f(0) is not finite");
  return detail::richardson(
      [&](double h) { return (f(2.0 * h) - 2.0 * f(h) + f0) / (h * h); }, schedule, 1e-2, 1e-9);
}

}  // namespace wideband

#endif
