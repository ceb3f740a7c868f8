// Special-function oracles: log-gamma against exact factorials, the
// regularized incomplete beta against hand-integrated polynomial cases and its
// reflection/inverse identities, and the Kolmogorov tail against tabulated
// values.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "subw/errors.hpp"
#include "subw/special.hpp"

using namespace subw;

TEST_CASE("log_gamma matches exact factorials") {
  CHECK(special::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(special::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-13));
  CHECK(special::log_gamma(0.5) ==
        doctest::Approx(0.5 * std::log(std::acos(-1.0))).epsilon(1e-13));
}

TEST_CASE("log_factorial") {
  CHECK(special::log_factorial(0) == doctest::Approx(0.0));
  CHECK(special::log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-13));
  CHECK(special::log_factorial(170) ==
        doctest::Approx(special::log_gamma(171.0)).epsilon(1e-13));
}

TEST_CASE("incomplete beta: polynomial case I_x(2,3)") {
  // I_x(2,3) = 12 (x^2/2 - 2x^3/3 + x^4/4), integrated by hand.
  auto exact = [](double x) {
    return 12.0 * (x * x / 2.0 - 2.0 * x * x * x / 3.0 + x * x * x * x / 4.0);
  };
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(special::incomplete_beta(2.0, 3.0, x) ==
          doctest::Approx(exact(x)).epsilon(1e-11));
  }
}

TEST_CASE("incomplete beta: identity I_x(1,1) = x and reflection") {
  for (double x : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    CHECK(special::incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
  }
  for (double x : {0.05, 0.3, 0.6, 0.95}) {
    const double s = special::incomplete_beta(2.5, 4.0, x) +
                     special::incomplete_beta(4.0, 2.5, 1.0 - x);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("incomplete beta inverse round-trips") {
  for (double p : {0.01, 0.25, 0.5, 0.75, 0.99}) {
    const double x = special::incomplete_beta_inv(3.0, 7.0, p);
    CHECK(special::incomplete_beta(3.0, 7.0, x) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(special::incomplete_beta_inv(2.0, 2.0, 0.0) == doctest::Approx(0.0));
  CHECK(special::incomplete_beta_inv(2.0, 2.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("kolmogorov tail: tabulated point and monotonicity") {
  // Q(1) = 2(e^{-2} - e^{-8} + e^{-18} - ...) = 0.2699996...
  CHECK(special::kolmogorov_tail(1.0) == doctest::Approx(0.2699996).epsilon(1e-5));
  CHECK(special::kolmogorov_tail(0.5) > special::kolmogorov_tail(1.0));
  CHECK(special::kolmogorov_tail(2.0) < 1e-3);
}
