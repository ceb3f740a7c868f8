// Envelope constants: the minimal-gamma root against its defining inequality,
// closed-form C(theta) for theta > 1, hand-computed values for theta <= 1, the
// dense-grid/refined-optimizer agreement, and the centering/H-bound helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "subw/constants.hpp"
#include "subw/errors.hpp"

using namespace subw;

namespace {

// The feasibility functional behind gamma_minimal: the smallest k > 1 with
// e^{2/k^2} - 1 + e^{2(1-k^2)/k^2} / (k^2 - 1) <= 1.
double gamma_lhs(double k) {
  const double k2 = k * k;
  return std::exp(2.0 / k2) - 1.0 + std::exp(2.0 * (1.0 - k2) / k2) / (k2 - 1.0);
}

}  // namespace

TEST_CASE("gamma_minimal solves its inequality") {
  const double g = constants::gamma_minimal(1e-6);
  CHECK(g > 1.77);
  CHECK(g < 1.79);
  CHECK(gamma_lhs(g) <= 1.0);               // feasible at the returned value
  CHECK(gamma_lhs(g - 1e-5) > 1.0);         // infeasible just below
  CHECK(gamma_lhs(1.2) > 1.0);              // clearly infeasible far below
  const double fine = constants::gamma_minimal(1e-10);
  CHECK(std::fabs(fine - g) < 1e-5);
  CHECK(fine == doctest::Approx(1.7784).epsilon(1e-3));
}

TEST_CASE("C(theta) closed form for theta > 1") {
  const double e = std::exp(1.0);
  const double log2 = std::log(2.0);
  CHECK(constants::big_c(2.0) ==
        doctest::Approx(2.0 * (4.0 * e + std::sqrt(log2))).epsilon(1e-12));
  CHECK(constants::big_c(1.5) ==
        doctest::Approx(2.0 * (4.0 * e + std::pow(log2, 1.0 / 1.5))).epsilon(1e-12));
}

TEST_CASE("C(theta) hand values for theta <= 1") {
  // theta = 1: 2[log2 + e^3(sqrt(Gamma(3)) + 3^{1/3} sup_p p^{-1} Gamma^{1/p}(p+1))],
  // sup at p = 2 -> 2[0.693147 + e^3 (sqrt2 + 3^{1/3}/sqrt2)] = 99.1649.
  CHECK(constants::big_c(1.0) == doctest::Approx(99.1649).epsilon(2e-4));
  // theta = 0.5: sup at p = 2 -> 2[log^2 2 + e^3(sqrt(24) + 3 sqrt(24)/4)] = 345.36.
  CHECK(constants::big_c(0.5) == doctest::Approx(345.36).epsilon(2e-4));
}

TEST_CASE("A and B coefficients") {
  // B(2) = 2e 2^{-1/2} (1/2)^{1/2} / (4e + sqrt(log 2)) = e / (4e + sqrt(log 2)).
  const double e = std::exp(1.0);
  CHECK(constants::a_b_theta(2.0) ==
        doctest::Approx(e / (4.0 * e + std::sqrt(std::log(2.0)))).epsilon(1e-12));
  // A(0.5): documented convention takes the infimum at the p-range edge.
  CHECK(constants::a_b_theta(0.5) == doctest::Approx(0.0952).epsilon(3e-3));
}

TEST_CASE("dense grid agrees with refined optimizer") {
  for (double theta : {0.4, 0.5, 0.8, 1.0}) {
    const double r = constants::big_c(theta, constants::Strategy::Refined);
    const double d = constants::big_c(theta, constants::Strategy::DenseGrid);
    CHECK(std::fabs(r - d) / r < 1e-3);
    const double ra = constants::a_b_theta(theta, constants::Strategy::Refined);
    const double da = constants::a_b_theta(theta, constants::Strategy::DenseGrid);
    CHECK(std::fabs(ra - da) / ra < 1e-3);
  }
}

TEST_CASE("moment constant C_theta") {
  // theta = 1: max over k of (2 sqrt(2 pi))^{1/k} (k)^{1/(2k)} sits at k = 1.
  CHECK(constants::c_theta_moment_const(1.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0 * std::acos(-1.0))).epsilon(1e-9));
  CHECK(constants::c_theta_moment_const(0.5) > 0.0);
}

TEST_CASE("centering factor and index helpers") {
  // theta = 1: K = 1, d = e/2, factor = 1 + 1/((e/2) log 2) = 2.06148.
  CHECK(constants::centering_factor(1.0) == doctest::Approx(2.06148).epsilon(1e-4));
  // theta in (0,1): K_theta = 2^{1/theta}.
  CHECK(constants::k_theta(0.5) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(constants::k_theta(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(constants::conjugate_index(2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(constants::conjugate_index(1.5) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(constants::conjugate_index(1.0), InputError);
  CHECK(constants::d_theta(1.0) == doctest::Approx(std::exp(1.0) / 2.0));
}

TEST_CASE("L_n weight") {
  // Unit coupling vector of length 10 at theta = 0.5:
  // L = gamma^4 A(0.5) ||b||_inf / ||b||_2 = gamma^4 A(0.5) / sqrt(10).
  const std::vector<double> b(10, 1.0);
  const double g = constants::gamma_minimal();
  const double expect = std::pow(g, 4.0) * constants::a_b_theta(0.5) / std::sqrt(10.0);
  CHECK(constants::l_n(0.5, b) == doctest::Approx(expect).epsilon(1e-9));
  // theta > 1 branch uses ||b||_beta with beta = theta/(theta-1).
  CHECK(constants::l_n(2.0, b) > 0.0);
}

TEST_CASE("H bound behavior") {
  // Desk-scale configuration: the bound exceeds 1 by orders of magnitude.
  const double c = 400.0 * std::log(9.0) / 10.0;
  const double t = c * 10.0 + 4.0;
  CHECK(constants::h_bound(t, 400, 2.0, 1.0) > 1.0);
  // Decreasing in n at fixed t.
  CHECK(constants::h_bound(1.0, 1000000, 2.0, 1.0) <
        constants::h_bound(1.0, 10000, 2.0, 1.0));
}

TEST_CASE("bundle serialization") {
  const auto j = constants::make_bundle(0.5).to_json();
  CHECK(j.contains("gamma"));
  CHECK(j.contains("big_c"));
  CHECK(j.contains("a_theta"));
  const auto j2 = constants::make_bundle(2.0).to_json();
  CHECK(j2.contains("b_theta"));
  const auto cmp = constants::reference_comparison();
  CHECK(cmp.contains("computed"));
  CHECK(cmp.contains("reference"));
}
