#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "wideband/validate.hpp"

using namespace wideband;

namespace {

const auto kModel = ChannelModel::awgn(1.0);
const auto kDerivs = derivatives_at_zero(kModel);
const double kGammaMin = shannon_limit(kDerivs).gamma_min_db;

EfficiencyCurve default_curve() { return generate_curve(kModel, 10.0, 200); }

}  // namespace

TEST_CASE("lower bound holds on the default grid with growing margin") {
  const auto curve = default_curve();
  const auto report = check_lower_bound(curve, kDerivs, 1e-9);
  CHECK(report.passed);
  CHECK(report.check_name == "lower_bound");
  CHECK(report.n_points == 201);
  // both curves vanish at the limit point, so the worst "violation" is the
  // exact tie there; every later point has strictly positive margin
  CHECK(report.worst_violation == 0.0);
  CHECK(report.worst_gamma_db == doctest::Approx(kGammaMin).epsilon(1e-12));
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    CHECK(p.se - nonlinear_estimate_db(kDerivs, p.gamma_db) > 0.0);
  }

  const auto& last = curve.points.back();
  const double margin = last.se - nonlinear_estimate_db(kDerivs, last.gamma_db);
  CHECK(margin == doctest::Approx(2.61841998062).epsilon(1e-8));
}

TEST_CASE("lower bound flags a constructed counterexample") {
  auto curve = generate_curve(kModel, 10.0, 11);
  curve.points.back().se = 0.0;
  const auto report = check_lower_bound(curve, kDerivs, 1e-9);
  CHECK_FALSE(report.passed);
  CHECK(report.worst_violation == doctest::Approx(2.5968510736).epsilon(1e-9));
  CHECK(report.worst_gamma_db == doctest::Approx(kGammaMin + 10.0).epsilon(1e-12));
}

TEST_CASE("lower bound on the limit point alone") {
  EfficiencyCurve curve{kModel, {{0.0, 0.0, std::numbers::ln2, kGammaMin}}};
  const auto report = check_lower_bound(curve, kDerivs, 1e-9);
  CHECK(report.passed);
  CHECK(std::abs(report.worst_violation) <= 1e-15);
  CHECK(report.n_points == 1);
}

TEST_CASE("sandwich holds on the whole awgn grid") {
  const auto curve = default_curve();
  for (double eps : {0.0, 0.01}) {
    const auto report = check_sandwich(curve, kDerivs, eps, 1e-9);
    CHECK(report.overall.passed);
    CHECK(report.prefix_points == 201);
    CHECK(report.prefix_end_gamma_db ==
          doctest::Approx(curve.points.back().gamma_db).epsilon(1e-12));
  }
  // inflating the slope only loosens the upper arm
  const auto tight = check_sandwich(curve, kDerivs, 0.0, 1e-9);
  const auto loose = check_sandwich(curve, kDerivs, 0.01, 1e-9);
  CHECK(loose.overall.worst_violation <= tight.overall.worst_violation + 1e-15);
}

TEST_CASE("sandwich prefix is nonempty for small positive epsilon") {
  const auto curve = default_curve();
  for (double eps : {1e-6, 1e-3, 0.1}) {
    const auto report = check_sandwich(curve, kDerivs, eps, 1e-9);
    CHECK(report.prefix_points >= 2);
  }
}

TEST_CASE("sandwich reports the longest prefix in gamma") {
  auto curve = generate_curve(kModel, 10.0, 20);
  curve.points[10].se = affine_estimate(kDerivs, curve.points[10].gamma_db) + 0.1;
  const auto report = check_sandwich(curve, kDerivs, 0.0, 1e-9);
  CHECK_FALSE(report.overall.passed);
  CHECK(report.prefix_points == 10);
  CHECK(report.prefix_end_gamma_db ==
        doctest::Approx(curve.points[9].gamma_db).epsilon(1e-12));
  CHECK(report.overall.worst_violation == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(report.overall.worst_gamma_db ==
        doctest::Approx(curve.points[10].gamma_db).epsilon(1e-12));
  CHECK_THROWS_AS(check_sandwich(curve, kDerivs, -0.1, 1e-9), std::domain_error);
}

TEST_CASE("convexity probe reports the true concave behaviour near the limit") {
  const auto probe = convexity_probe(kModel, 1.0, 0.05);
  CHECK(probe.check_name == "convexity");
  CHECK(probe.n_points == 18);
  // the true curve is concave in gamma on this window: every central second
  // difference is negative, most strongly right after the limit
  CHECK_FALSE(probe.passed);
  CHECK(probe.worst_violation == doctest::Approx(1.245923e-4).epsilon(1e-4));
  CHECK(probe.worst_gamma_db == doctest::Approx(kGammaMin + 0.10).epsilon(1e-9));

  // cross-check the probed second differences against the implicit-equation
  // oracle path
  std::vector<double> se(21);
  for (int j = 1; j <= 20; ++j)
    se[(std::size_t)j] =
        awgn_implicit_spectral_efficiency(1.0, std::pow(10.0, (kGammaMin + 0.05 * j) / 10.0));
  double min_diff = 1e300;
  for (int j = 2; j <= 19; ++j) {
    const double d =
        se[(std::size_t)j + 1] - 2.0 * se[(std::size_t)j] + se[(std::size_t)j - 1];
    CHECK(d < 0.0);
    min_diff = std::min(min_diff, d);
  }
  CHECK(probe.worst_violation == doctest::Approx(-min_diff).epsilon(1e-6));
}

TEST_CASE("convexity probe passes on a synthetic convex curve and fails on an affine one") {
  const auto convex = convexity_probe([](double g) { return (g + 2.0) * (g + 2.0); }, -2.0, 1.0, 0.05);
  CHECK(convex.passed);
  CHECK(convex.worst_violation < 0.0);

  // an affine curve is flat to rounding; exactly-zero differences (constant
  // curve) must fail strict positivity
  const auto affine = convexity_probe([](double g) { return 0.664 * (g + 2.0); }, -2.0, 1.0, 0.05);
  CHECK(std::abs(affine.worst_violation) <= 1e-12);
  const auto flat = convexity_probe([](double) { return 1.0; }, -2.0, 1.0, 0.05);
  CHECK_FALSE(flat.passed);
  CHECK(flat.worst_violation == 0.0);

  CHECK_THROWS_AS(convexity_probe([](double) { return 0.0; }, 0.0, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("slope equality check") {
  const auto r1 = check_slope_equality(kModel, kDerivs, 1e-4);
  CHECK(r1.passed);
  CHECK(r1.worst_violation <= 1e-4);
  CHECK(r1.tolerance == 1e-3);

  const auto g2 = ChannelModel::awgn(2.0);
  const auto r2 = check_slope_equality(g2, derivatives_at_zero(g2), 1e-4);
  CHECK(r2.passed);
  CHECK(r2.worst_violation <= 1e-4);

  CHECK_THROWS_AS(check_slope_equality(kModel, kDerivs, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(check_slope_equality(kModel, kDerivs, 0.1), std::invalid_argument);
}

TEST_CASE("error report values at the reference spots") {
  const auto curve = default_curve();
  const auto report = error_report(curve, kDerivs);
  REQUIRE(report.rows.size() == curve.points.size());

  const auto& limit_row = report.rows.front();
  CHECK(limit_row.err_affine == 0.0);
  CHECK(limit_row.err_nonlinear == 0.0);
  CHECK(limit_row.err_averaged == 0.0);

  const auto& last = report.rows.back();
  CHECK(last.err_affine == doctest::Approx(1.42858513556).epsilon(1e-8));
  CHECK(last.err_nonlinear == doctest::Approx(-2.61841998062).epsilon(1e-8));
  CHECK(last.err_averaged == doctest::Approx(-0.594917422531).epsilon(1e-8));

  CHECK(report.max_abs_err_averaged < report.max_abs_err_affine);
  CHECK(report.max_abs_err_averaged < report.max_abs_err_nonlinear);
}

TEST_CASE("error report at three dB above the limit") {
  const double gamma = kGammaMin + 10.0 * std::log10(2.0);
  const auto eval = evaluate_all(kDerivs, gamma);
  const double truth = oracles::fixed_point_se(2.0 * std::numbers::ln2);
  CHECK(eval.affine - truth == doctest::Approx(0.187352926097).epsilon(1e-8));
  CHECK(eval.nonlinear - truth == doctest::Approx(-0.369952033014).epsilon(1e-8));
  CHECK(eval.averaged - truth == doctest::Approx(-0.0912995534586).epsilon(1e-8));
}

TEST_CASE("averaged error is bounded by the wider bracket arm wherever the sandwich holds") {
  const auto curve = default_curve();
  const auto sandwich = check_sandwich(curve, kDerivs, 0.0, 1e-9);
  REQUIRE(sandwich.overall.passed);
  const auto report = error_report(curve, kDerivs);
  for (const auto& row : report.rows) {
    const double wider = std::max(row.err_affine, -row.err_nonlinear);
    CHECK(std::abs(row.err_averaged) <= wider + 1e-12);
  }
}

TEST_CASE("reports are deterministic") {
  const auto curve = generate_curve(kModel, 10.0, 30);
  const auto a = check_lower_bound(curve, kDerivs, 1e-9);
  const auto b = check_lower_bound(curve, kDerivs, 1e-9);
  CHECK(a.passed == b.passed);
  CHECK(a.worst_violation == b.worst_violation);
  CHECK(a.worst_gamma_db == b.worst_gamma_db);
}
