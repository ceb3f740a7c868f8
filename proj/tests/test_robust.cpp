// Robust mean estimation: the damping-function contract (admissibility
// sandwich, scaling), the closed-form tuning rules with their worked examples,
// the quadratic-damping oracle for the deviation radius, translation
// equivariance of the estimator, and the deviation-certificate harness on a
// degenerate law.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "subw/distributions.hpp"
#include "subw/errors.hpp"
#include "subw/robust.hpp"

using namespace subw;

TEST_CASE("power damping is admissible and sandwiched") {
  const robust::CFunction cf = robust::power_c(2.0);
  CHECK(cf.c2 == doctest::Approx(2.0));
  CHECK(cf.c(1.0) == doctest::Approx(0.5));
  for (double x : {-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0}) {
    const double lo = -std::log(1.0 - x + cf.c(std::fabs(x)));
    const double hi = std::log(1.0 + x + cf.c(std::fabs(x)));
    const double mid = robust::phi_c(x, cf);
    CHECK(lo <= mid + 1e-12);
    CHECK(mid <= hi + 1e-12);
    CHECK(robust::phi_c(-x, cf) == doctest::Approx(-mid).epsilon(1e-12));
  }
  // Admissibility floor: c(x) >= sqrt(1+x^2) - 1.
  for (double x : {0.1, 1.0, 5.0, 50.0}) {
    CHECK(cf.c(x) + 1e-12 >= std::sqrt(1.0 + x * x) - 1.0);
  }
  CHECK_NOTHROW(robust::power_c(1.5));
}

TEST_CASE("inadmissible damping is rejected") {
  robust::CFunction bad;
  bad.c = [](double) { return 0.0; };
  bad.c2 = 1.0;
  bad.f = [](double t) { return t; };
  bad.f_inv = [](double y) { return y; };
  bad.label = "zero";
  CHECK_THROWS_AS(robust::validate_cfunction(bad), InputError);
}

TEST_CASE("z score is non-increasing in theta") {
  const robust::CFunction cf = robust::power_c(2.0);
  const std::vector<double> x = {0.3, -1.2, 2.4, 0.9, -0.5, 4.1};
  double prev = robust::z_score(-3.0, x, 0.5, cf);
  for (double theta = -2.5; theta <= 5.0; theta += 0.5) {
    const double cur = robust::z_score(theta, x, 0.5, cf);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("solve_z on degenerate and shifted data") {
  const robust::CFunction cf = robust::power_c(2.0);
  const std::vector<double> flat = {5.0, 5.0, 5.0};
  CHECK(robust::solve_z(flat, 0.3, cf) == doctest::Approx(5.0).epsilon(1e-9));

  const std::vector<double> x = {0.3, -1.2, 2.4, 0.9, -0.5, 4.1, 0.0, 1.7};
  const double base = robust::solve_z(x, 0.4, cf);
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 10.0;
  CHECK(robust::solve_z(shifted, 0.4, cf) == doctest::Approx(base + 10.0).epsilon(1e-8));
}

TEST_CASE("moment-order tuning rule worked example") {
  // beta = 2, eps = e^{-1}, n v = 4: alpha = (1/2)(4/(n v))^{1/2} = 1/2.
  const robust::AlphaChoice ac = robust::choose_alpha(4.0, 2.0, std::exp(-1.0), 1.0);
  CHECK(ac.alpha == doctest::Approx(0.5).epsilon(1e-12));
  // n_required = ((2v+1)/2)^2 * 4/v = 9 > 4: condition not met.
  CHECK(ac.n_required == doctest::Approx(9.0).epsilon(1e-9));
  CHECK_FALSE(ac.condition_ok);
  CHECK_THROWS_AS(robust::choose_alpha(100.0, 2.5, 0.05, 1.0), InputError);
}

TEST_CASE("general alpha rule inverts the scaling majorant") {
  const robust::CFunction cf = robust::power_c(2.0);
  // f(t) = t^2, so alpha = sqrt(log(1/delta) / (c2 * S)).
  const double s = 7.0;
  const double delta = 0.1;
  const double a = robust::choose_alpha_general(s, delta, cf);
  CHECK(a == doctest::Approx(std::sqrt(std::log(10.0) / (2.0 * s))).epsilon(1e-9));
}

TEST_CASE("deviation bound quadratic oracle") {
  // For c(x) = x^2/2, c2 = 2: g(t) = t + alpha t^2; the branch through 0 gives
  // |t| = (1 - sqrt(1 + 4 alpha target)) / (2 alpha) at negative target.
  const double n = 100.0, alpha = 0.1, delta = 0.05;
  const double target = -2.0 * std::log(1.0 / delta) / (n * alpha);
  const double expect = std::fabs((-1.0 + std::sqrt(1.0 + 4.0 * alpha * target)) /
                                  (2.0 * alpha));
  CHECK(robust::deviation_bound(n, alpha, delta, robust::power_c(2.0)) ==
        doctest::Approx(expect).epsilon(1e-6));
  // Unreachable level: target below the stationary value of g.
  CHECK_THROWS_AS(robust::deviation_bound(5.0, 0.1, 0.01, robust::power_c(2.0)),
                  NumericError);
}

TEST_CASE("chen radius closed form at beta = 2") {
  // 2 (4/n)^{1/2} / (2 - (4/n)^{1/2}) = 2/(sqrt(n) - 1) for eps = e^{-1}, v = 1.
  const double n = 10000.0;
  CHECK(robust::chen_bound(n, 2.0, std::exp(-1.0), 1.0) ==
        doctest::Approx(2.0 / (std::sqrt(n) - 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(robust::chen_bound(4.0, 2.0, std::exp(-5.0), 1.0), NumericError);
}

TEST_CASE("confidence endpoints on a symmetric slab") {
  // Constant moment term: both endpoints sit at mu_n -+ (cbar/alpha + slack).
  const double cbar = 0.3, alpha = 0.5, delta = 0.1, n = 50.0, mu = 2.0;
  const robust::Endpoints ep = robust::confidence_endpoints(
      [cbar](double, double) { return cbar; }, mu, n, alpha, delta);
  const double radius = cbar / alpha + std::log(1.0 / delta) / (n * alpha);
  CHECK(ep.theta_plus == doctest::Approx(mu + radius).epsilon(1e-8));
  CHECK(ep.theta_minus == doctest::Approx(mu - radius).epsilon(1e-8));
}

TEST_CASE("deviation certificate on a point mass") {
  const auto mean_est = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
  };
  const mc::SimReport rep = robust::certify_subweibull_estimator(
      mean_est, dist::point_mass(3.0), 20, 1.0, 3.0, 1.0, 2.0, {1.0, 2.0}, 1000,
      0.99, 7);
  CHECK(rep.violations == 0);
  CHECK(rep.pass);
}
