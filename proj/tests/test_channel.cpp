#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "wideband/channel.hpp"

using namespace wideband;

namespace {

std::vector<CapacitySample> awgn_log_samples(double gain, double lo, double hi, int n_log) {
  std::vector<CapacitySample> samples{{0.0, 0.0}};
  for (int i = 0; i < n_log; ++i) {
    const double x = lo * std::pow(hi / lo, double(i) / (n_log - 1));
    samples.push_back({x, awgn_capacity(gain, x)});
  }
  return samples;
}

}  // namespace

TEST_CASE("awgn capacity closed form") {
  CHECK(awgn_capacity(1.0, 0.0) == 0.0);
  CHECK(awgn_capacity(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(awgn_capacity(1.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(awgn_capacity(2.0, 1.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
}

TEST_CASE("awgn capacity rejects bad input") {
  CHECK_THROWS_AS(awgn_capacity(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(awgn_capacity(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(awgn_capacity(1.0, -1e-9), std::domain_error);
  CHECK_THROWS_AS(awgn_capacity(1.0, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(awgn_capacity(std::numeric_limits<double>::infinity(), 1.0), std::domain_error);
}

TEST_CASE("awgn capacity is concave through the origin and strictly increasing") {
  const auto model = ChannelModel::awgn(1.7);
  const double c1 = derivatives_at_zero(model).slope;
  double prev = 0.0;
  for (int i = 1; i <= 300; ++i) {
    const double snr = 1e-6 * std::pow(10.0, 7.0 * i / 300.0);
    const double c = capacity(model, snr);
    CHECK(c <= c1 * snr * (1.0 + 1e-12));
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("capacity dispatch for tabulated models") {
  const auto model = ChannelModel::tabulated(awgn_log_samples(1.0, 0.05, 10.0, 63));
  REQUIRE(model.samples().size() == 64);
  CHECK(capacity(model, 3.0) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(capacity(model, 0.0) == 0.0);
  CHECK(capacity(model, 10.0) == doctest::Approx(awgn_capacity(1.0, 10.0)).epsilon(1e-9));
  CHECK_THROWS_AS(capacity(model, 10.0 + 1e-9), std::out_of_range);
}

TEST_CASE("tabulated interpolation stays monotone on random monotone data") {
  oracles::Lcg rng(20240817);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CapacitySample> samples{{0.0, 0.0}};
    double x = 0.0, y = 0.0;
    for (int i = 0; i < 12; ++i) {
      x += rng.uniform(0.05, 1.0);
      y += rng.uniform(0.01, 0.8);
      samples.push_back({x, y});
    }
    const auto model = ChannelModel::tabulated(samples);
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
      const double s = x * i / 500.0;
      const double c = capacity(model, s);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("tabulated model invariants are enforced") {
  CHECK_THROWS_AS(ChannelModel::tabulated({{0.0, 0.0}}), invalid_channel_error);
  CHECK_THROWS_AS(ChannelModel::tabulated({{0.1, 0.1}, {0.2, 0.2}}), invalid_channel_error);
  CHECK_THROWS_AS(ChannelModel::tabulated({{0.0, 0.0}, {0.1, 0.1}, {0.1, 0.2}}),
                  invalid_channel_error);
  CHECK_THROWS_AS(ChannelModel::tabulated({{0.0, 0.0}, {0.1, 0.2}, {0.2, 0.2}}),
                  invalid_channel_error);
  CHECK_THROWS_AS(ChannelModel::tabulated({{0.0, 0.0}, {0.1, std::nan("")}}),
                  invalid_channel_error);
}

TEST_CASE("derivatives at zero: awgn closed forms") {
  const auto d1 = derivatives_at_zero(ChannelModel::awgn(1.0));
  CHECK(d1.slope == doctest::Approx(std::numbers::log2e).epsilon(1e-15));
  CHECK(d1.curvature == doctest::Approx(-std::numbers::log2e).epsilon(1e-15));

  const auto d2 = derivatives_at_zero(ChannelModel::awgn(2.0));
  CHECK(d2.slope == doctest::Approx(2.0 * std::numbers::log2e).epsilon(1e-15));
  CHECK(d2.curvature == doctest::Approx(-4.0 * std::numbers::log2e).epsilon(1e-15));
}

TEST_CASE("derivatives at zero match finite differences for awgn") {
  for (double gain : {0.5, 1.0, 2.0}) {
    const auto closed = derivatives_at_zero(ChannelModel::awgn(gain));
    const auto f = [gain](double snr) { return awgn_capacity(gain, snr); };
    const auto fd1 = fd_first_derivative_at_zero(f);
    const auto fd2 = fd_second_derivative_at_zero(f);
    CHECK(std::abs(fd1.value - closed.slope) / closed.slope <= 1e-6);
    CHECK(std::abs(fd2.value - closed.curvature) / std::abs(closed.curvature) <= 1e-3);
  }
}

TEST_CASE("declared derivatives are returned verbatim") {
  const DerivativesAtZero declared(1.25, -0.5);
  const auto model = ChannelModel::tabulated(awgn_log_samples(1.0, 0.05, 10.0, 63), declared);
  CHECK_FALSE(model.derivatives_estimated());
  const auto d = derivatives_at_zero(model);
  CHECK(d.slope == 1.25);
  CHECK(d.curvature == -0.5);
}

TEST_CASE("estimated derivatives track the generating channel when samples are dense near zero") {
  const auto model = ChannelModel::tabulated(awgn_log_samples(1.0, 1e-4, 10.0, 96));
  REQUIRE(model.derivatives_estimated());
  const auto d = derivatives_at_zero(model);
  CHECK(std::abs(d.slope - std::numbers::log2e) / std::numbers::log2e <= 1e-6);
  CHECK(std::abs(d.curvature + std::numbers::log2e) / std::numbers::log2e <= 5e-3);
}

TEST_CASE("an exactly linear capacity table is rejected") {
  std::vector<CapacitySample> samples;
  for (int i = 0; i <= 32; ++i) samples.push_back({i * 0.25, i * 0.25});
  const auto model = ChannelModel::tabulated(samples);
  CHECK_THROWS_AS(derivatives_at_zero(model), invalid_channel_error);
}

TEST_CASE("derivative validation rejects bad declared pairs") {
  CHECK_THROWS_AS(DerivativesAtZero(0.0, -1.0), invalid_channel_error);
  CHECK_THROWS_AS(DerivativesAtZero(-1.0, -1.0), invalid_channel_error);
  CHECK_THROWS_AS(DerivativesAtZero(1.0, 0.0), invalid_channel_error);
  CHECK_THROWS_AS(DerivativesAtZero(1.0, 1.0), invalid_channel_error);
  CHECK_THROWS_AS(DerivativesAtZero(std::nan(""), -1.0), invalid_channel_error);
}

TEST_CASE("capacity derivatives agree with the closed forms for awgn") {
  const auto model = ChannelModel::awgn(1.5);
  for (double snr : {0.0, 1e-3, 0.1, 1.0, 7.0}) {
    const double u = 1.0 + 1.5 * snr;
    CHECK(capacity_derivative(model, snr) ==
          doctest::Approx(std::numbers::log2e * 1.5 / u).epsilon(1e-15));
    CHECK(capacity_second_derivative(model, snr) ==
          doctest::Approx(-std::numbers::log2e * 2.25 / (u * u)).epsilon(1e-15));
  }
}

TEST_CASE("interpolant derivatives track the awgn curve") {
  const auto model = ChannelModel::tabulated(awgn_log_samples(1.0, 1e-4, 10.0, 96));
  for (double snr : {0.01, 0.1, 1.0, 3.0}) {
    CHECK(capacity_derivative(model, snr) ==
          doctest::Approx(std::numbers::log2e / (1.0 + snr)).epsilon(1e-3));
    // curvature of the cubic pieces is first-order accurate at best
    CHECK(capacity_second_derivative(model, snr) ==
          doctest::Approx(-std::numbers::log2e / ((1.0 + snr) * (1.0 + snr))).epsilon(0.2));
  }
}
