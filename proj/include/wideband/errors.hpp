#ifndef WIDEBAND_ERRORS_HPP
#define WIDEBAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wideband {

/// Channel violates the regularity requirements (positive capacity slope and
/// strictly negative curvature at zero SNR).
class invalid_channel_error : public std::domain_error {
public:
  explicit invalid_channel_error(const std::string& what) : std::domain_error(what) {}
};

/// Requested energy-per-bit lies below the Shannon limit of the channel.
class no_solution_error : public std::domain_error {
public:
  explicit no_solution_error(const std::string& what) : std::domain_error(what) {}
};

/// A numerical routine failed to reach its accuracy target.
class solver_error : public std::runtime_error {
public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed channel spec file.
class spec_parse_error : public std::invalid_argument {
public:
  explicit spec_parse_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wideband

#endif
