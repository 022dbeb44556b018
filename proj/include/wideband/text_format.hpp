#ifndef WIDEBAND_TEXT_FORMAT_HPP
#define WIDEBAND_TEXT_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wideband {

/// Fixed 12-significant-digit rendering for table output. Scientific notation
/// (lowercase) kicks in only when |x| < 1e-4 or |x| >= 1e7; exact zero prints
/// as "0". Golden-file tests rely on these bytes.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (!std::isfinite(x)) throw std::domain_error("format_number: non-finite value");
  const double ax = std::abs(x);
  char buf[64];
  if (ax < 1e-4 || ax >= 1e7) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  } else {
    const int exponent = static_cast<int>(std::floor(std::log10(ax)));
    std::snprintf(buf, sizeof buf, "%.*f", 11 - exponent, x);
  }
  return buf;
}

inline const char* format_bool(bool b) { return b ? "true" : "false"; }

}  // namespace wideband

#endif
