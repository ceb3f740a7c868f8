// Tail curves and deviation radii: boundary values, the radius/tail exact
// inverse pairs (pinned to 1e-10), two-regime branch continuity at the
// crossover, vacuity flags, the composed sub-exponential pair, and the
// data-driven confidence interval on deterministic samples.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "subw/constants.hpp"
#include "subw/errors.hpp"
#include "subw/norms.hpp"
#include "subw/tails.hpp"

using namespace subw;

TEST_CASE("single-variable psi tail") {
  const tails::TailBound tb = tails::tail_single_psi(4.0, 0.5);
  CHECK(tb.eval(4.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(tb.eval(0.0) == doctest::Approx(1.0));  // clamped
  // 2 e^{-log 2} = 1 exactly at t = v (log 2)^{1/theta}.
  const double t1 = 4.0 * std::pow(std::log(2.0), 2.0);
  CHECK(tb.eval(t1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tb.eval(1e9) < 1e-6);
}

TEST_CASE("single-variable phi tail") {
  const tails::TailBound tb = tails::tail_single_phi(1.0, 1.0);
  CHECK(tb.eval(2.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(tb.eval(0.0) == doctest::Approx(1.0));
}

TEST_CASE("sub-exponential sum bound and its radius") {
  const std::vector<double> w = {1.0, -2.0, 0.5};
  const std::vector<double> v = {2.0, 1.0, 3.0};
  const tails::TailBound tb = tails::tail_subexp_sum(w, v);
  // Quadratic/linear scales: sum w^2 v^2 = 4 + 4 + 2.25 = 10.25, max |w|v = 2.
  const double expect =
      2.0 * std::exp(-0.25 * std::min(400.0 / (2.0 * 10.25), 20.0 / 2.0));
  CHECK(tb.eval(20.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(tb.eval(5.0) == doctest::Approx(1.0));  // raw value > 1 clamps to 1

  // Composition: evaluating the curve at the radius stays below 2 e^{-t/2}.
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double r = tails::subexp_deviation(w, v, t);
    CHECK(tb.eval(r) <= 2.0 * std::exp(-t / 2.0) + 1e-12);
  }
  CHECK_THROWS_AS(tails::tail_subexp_sum({1.0}, {2.0, 3.0}), InputError);
}

TEST_CASE("negative binomial scale and sum curve") {
  // a(1,1) = 1/log(3/2) + 1/log 2 = 3.909.
  CHECK(tails::nb_scale(1.0, 1.0) == doctest::Approx(3.909).epsilon(1e-3));
  const std::vector<double> w(100, 0.01);
  const tails::TailBound tb =
      tails::tail_nb_sum(w, std::vector<double>(100, 1.0),
                         std::vector<double>(100, 1.0));
  CHECK(tb.eval(1.0) < 1.0);
  CHECK(tb.eval(2.0) < tb.eval(1.0));
}

TEST_CASE("weighted psi-sum radius and tail invert each other") {
  tails::WeightedFamily fam;
  fam.weights = {0.2, 0.5, 0.3, 0.7};
  fam.psi_norms = {1.0, 2.0, 0.5, 1.5};
  for (double theta : {0.5, 1.0, 1.5, 3.0}) {
    fam.theta = theta;
    for (double t : {0.5, 1.0, 3.0, 7.0}) {
      const double s = tails::sum_deviation(fam, t);
      const double back = tails::sum_tail_inverted(fam, s);
      CHECK(back == doctest::Approx(2.0 * std::exp(-t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("gbo pair inverts exactly") {
  const norms::NormValue g = norms::make_gbo(2.5, 0.5, 0.3);
  for (double t : {0.2, 1.0, 4.0}) {
    const double s = tails::gbo_deviation(g, t);
    CHECK(tails::gbo_tail(g, s) == doctest::Approx(2.0 * std::exp(-t)).epsilon(1e-10));
  }
  CHECK(tails::gbo_tail(g, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("two-regime wedge is continuous at the crossover") {
  tails::WeightedFamily fam;
  fam.weights = std::vector<double>(10, 0.1);
  fam.psi_norms = std::vector<double>(10, 1.0);
  for (double theta : {0.5, 1.5, 3.0}) {
    fam.theta = theta;
    const tails::TailBound tb = tails::sum_tail_two_regime(fam);
    const double star = tails::two_regime_crossover(fam);
    REQUIRE(star > 0.0);
    const double below = tb.eval(star * (1.0 - 1e-13));
    const double above = tb.eval(star * (1.0 + 1e-13));
    CHECK(std::fabs(below - above) / below < 1e-9);
  }
  fam.theta = 2.0;
  CHECK_THROWS_AS(tails::two_regime_crossover(fam), InputError);
}

TEST_CASE("gbo sum norm composes the envelope constants") {
  tails::WeightedFamily fam;
  fam.weights = {1.0};
  fam.psi_norms = {1.0};
  fam.theta = 0.5;
  const norms::NormValue g = tails::sum_gbo_norm(fam);
  CHECK(g.value == doctest::Approx(constants::gamma_minimal() * std::exp(1.0) *
                                   constants::big_c(0.5))
                       .epsilon(1e-10));
  CHECK(g.gbo_L.has_value());
}

TEST_CASE("phi sum tail and CI radius invert each other") {
  const std::size_t n = 5;
  const std::vector<double> v(n, 1.2);
  const double theta = 0.7;
  const tails::TailBound tb = tails::phi_sum_tail(v, theta);
  CHECK(tb.valid_from > 0.0);
  CHECK(tb.vacuous_at(tb.valid_from * 0.5));
  CHECK(tb.eval(tb.valid_from * 0.5) == doctest::Approx(1.0));
  for (double alpha : {0.01, 0.05, 0.3}) {
    const double r = tails::phi_sum_ci_radius(v, theta, alpha);
    CHECK(tb.eval(static_cast<double>(n) * r) == doctest::Approx(alpha).epsilon(1e-10));
  }
  CHECK_THROWS_AS(tails::phi_sum_ci_radius(v, theta, 0.5), InputError);
}

TEST_CASE("phi mixed radius grows with confidence") {
  const std::vector<double> means(5, 0.8);
  const std::vector<double> v(5, 1.2);
  const double r1 = tails::phi_sum_mixed_radius(means, v, 1.0, 1.0);
  const double r2 = tails::phi_sum_mixed_radius(means, v, 1.0, 3.0);
  CHECK(r1 > 0.0);
  CHECK(r2 > r1);
}

TEST_CASE("data-driven confidence interval") {
  std::vector<double> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(i % 2 == 0 ? 1.0 : -1.0);

  SUBCASE("gbo method on symmetric data") {
    const tails::CiResult ci = tails::confidence_interval(samples, 1.0, 0.05, "gbo");
    CHECK(ci.center == doctest::Approx(0.0));
    CHECK(ci.radius > 0.0);
    CHECK(ci.lower == doctest::Approx(-ci.radius));
    CHECK(ci.upper == doctest::Approx(ci.radius));
    // Centered data are all +-1: the EMGF norm estimate is 1/log 2.
    CHECK(ci.norm_estimate.value == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-9));
  }
  SUBCASE("phi method") {
    const tails::CiResult ci = tails::confidence_interval(samples, 1.0, 0.05, "phi");
    CHECK(ci.radius > 0.0);
    CHECK(ci.to_json().contains("radius"));
  }
  SUBCASE("input guards") {
    CHECK_THROWS_AS(tails::confidence_interval(samples, 1.0, 0.05, "nope"),
                    InputError);
    CHECK_THROWS_AS(tails::confidence_interval({1.0}, 1.0, 0.05, "gbo"), InputError);
    CHECK_THROWS_AS(tails::confidence_interval(samples, 1.0, 1.5, "gbo"), InputError);
  }
}

TEST_CASE("best bound picks the minimum") {
  const tails::TailBound a = tails::tail_single_psi(1.0, 1.0);
  const tails::TailBound b = tails::tail_single_psi(2.0, 1.0);
  const double t = 5.0;
  CHECK(tails::best_bound({a, b}, t) == doctest::Approx(a.eval(t)));
}

TEST_CASE("reference comparison is emitted with both conventions") {
  const auto j = tails::reference_ci_comparison();
  CHECK(j.contains("computed"));
  CHECK(j.contains("reference"));
  CHECK(j.at("reference").at("radius_a") == doctest::Approx(2118.80));
}

TEST_CASE("tail bound serialization") {
  const auto j = tails::tail_single_psi(1.5, 2.0).to_json();
  CHECK(j.contains("kind"));
  CHECK(j.contains("constants"));
  CHECK(j.contains("valid_from"));
}
