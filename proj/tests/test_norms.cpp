// Orlicz-type norms: closed forms against MGF inversion (the dual routes must
// agree to 1e-8), the displayed phi_2 values, the exact-moment series, the two
// data-driven estimators on deterministic inputs, and the algebraic transforms
// (power, product, centering, scaling).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "subw/constants.hpp"
#include "subw/distributions.hpp"
#include "subw/errors.hpp"
#include "subw/norms.hpp"

using namespace subw;

namespace {

double invert_psi(const dist::Distribution& d, double theta) {
  const dist::Distribution::AbsMgf m = d.abs_mgf(theta);
  return norms::psi_norm_mgf_inversion(m.fn, theta, m.t_upper).value;
}

}  // namespace

TEST_CASE("bounded closed form") {
  CHECK(norms::psi_norm_bounded(1.0, 1.0).value ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
  CHECK(norms::psi_norm_bounded(3.0, 2.0).value ==
        doctest::Approx(3.0 / std::sqrt(std::log(2.0))).epsilon(1e-12));
  CHECK_THROWS_AS(norms::psi_norm_bounded(-1.0, 1.0), InputError);
}

TEST_CASE("MGF inversion recovers known norms") {
  // Weibull(theta): |X|^theta ~ Exp(1), inversion level 2 at t = 1/2.
  CHECK(invert_psi(dist::weibull(0.5), 0.5) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(invert_psi(dist::weibull(2.0), 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  // Exp(1): E e^{tX} = 1/(1-t) = 2 at t = 1/2, norm 2; scale doubles it.
  CHECK(invert_psi(dist::exponential(1.0), 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(invert_psi(dist::exponential(2.0), 1.0) == doctest::Approx(4.0).epsilon(1e-9));
  // |N(0,1)|: E e^{tX^2} = (1-2t)^{-1/2} = 2 at t = 3/8, norm sqrt(8/3).
  CHECK(invert_psi(dist::gaussian(), 2.0) ==
        doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("centered exponential MGF inversion") {
  // Exact MGF of |X-1|, X ~ Exp(1): (e^s - e^{-1})/(1+s) + e^{-1}/(1-s).
  const dist::Distribution d = dist::centered(dist::exponential(1.0));
  const dist::Distribution::AbsMgf m = d.abs_mgf(1.0);
  CHECK(m.fn(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double v = invert_psi(d, 1.0);
  CHECK(v == doctest::Approx(1.532).epsilon(2e-3));
  // The exact inversion beats the generic centering surcharge.
  CHECK(v < constants::centering_factor(1.0) * 2.0);
}

TEST_CASE("negative binomial closed form equals MGF inversion on a grid") {
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const double closed = norms::psi1_norm_negbin(mu, k).value;
      const double inverted = invert_psi(dist::neg_binomial(mu, k), 1.0);
      CHECK(std::fabs(closed - inverted) < 1e-8);
    }
  }
}

TEST_CASE("poisson closed form equals MGF inversion") {
  for (double lambda : {0.5, 1.0, 3.0}) {
    const double closed = norms::psi1_norm_poisson(lambda).value;
    const double inverted = invert_psi(dist::poisson(lambda), 1.0);
    CHECK(std::fabs(closed - inverted) < 1e-8);
  }
  // Centering adds the triangle surcharge lambda / log 2.
  CHECK(norms::psi1_norm_poisson(1.0, true).value ==
        doctest::Approx(norms::psi1_norm_poisson(1.0).value + 1.0 / std::log(2.0))
            .epsilon(1e-12));
}

TEST_CASE("displayed phi_2 closed forms") {
  CHECK(norms::phi2_closed_form(dist::gaussian()).value ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(norms::phi2_closed_form(dist::bernoulli(0.3)).value ==
        doctest::Approx(0.4582576).epsilon(1e-6));
  CHECK(norms::phi2_closed_form(dist::uniform_sym()).value ==
        doctest::Approx(0.5773503).epsilon(1e-6));
  CHECK_THROWS_AS(norms::phi2_closed_form(dist::exponential(1.0)), InputError);
}

TEST_CASE("phi series: exponential and centered poisson") {
  // Exp(lambda): E X^k = k! lambda^k, every ratio equals lambda.
  const dist::Distribution e2 = dist::exponential(2.0);
  const double ve = norms::phi_norm_series(
      [&e2](int k) { return e2.abs_moment(static_cast<double>(k)); }, 1.0).value;
  CHECK(ve == doctest::Approx(2.0).epsilon(1e-9));

  // Centered Poisson(1): the k = 1 term E|X-1| = 2/e dominates the series.
  const dist::Distribution cp = dist::centered(dist::poisson(1.0));
  const norms::NormValue vp = norms::phi_norm_series(
      [&cp](int k) { return cp.abs_moment(static_cast<double>(k)); }, 1.0);
  CHECK(vp.value == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-6));
  CHECK_FALSE(vp.truncated_sup);

  // Centered Exp(1): the ratios increase toward 1, so the sup truncates.
  const dist::Distribution ce = dist::centered(dist::exponential(1.0));
  const norms::NormValue vc = norms::phi_norm_series(
      [&ce](int k) { return ce.abs_moment(static_cast<double>(k)); }, 1.0);
  CHECK(vc.value > 0.95);
  CHECK(vc.value < 1.0);
  CHECK(vc.truncated_sup);
}

TEST_CASE("moment-ratio estimator on deterministic data") {
  // Constant samples c <= 1: sup_k (c^k/k!)^{1/k} sits at k = 1.
  const std::vector<double> ones(8, 1.0);
  const norms::NormValue v1 = norms::estimate_phi_norm(ones, 1.0, 1);
  CHECK(v1.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v1.argmax_k.value() == 1);

  // theta = 1 default starts at k = 2: (1/2!)^{1/2} = 0.7071 for unit data.
  const norms::NormValue v2 = norms::estimate_phi_norm(ones, 1.0);
  CHECK(v2.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

  // All zeros: the norm of the zero variable.
  CHECK(norms::estimate_phi_norm(std::vector<double>(5, 0.0), 2.0).value ==
        doctest::Approx(0.0));

  // Scaling is exact by construction.
  std::vector<double> data = {0.3, 1.1, 0.7, 2.2, 0.05};
  std::vector<double> scaled = data;
  for (double& v : scaled) v *= 3.0;
  CHECK(norms::estimate_phi_norm(scaled, 2.0).value ==
        doctest::Approx(3.0 * norms::estimate_phi_norm(data, 2.0).value)
            .epsilon(1e-12));
}

TEST_CASE("empirical MGF inversion on deterministic data") {
  // Unit samples: (1/n) sum e^{t} = 2 at t = log 2, norm 1/log 2.
  const std::vector<double> ones(10, 1.0);
  CHECK(norms::estimate_psi_norm_emgf(ones, 1.0).value ==
        doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-10));
  // theta = 2 on unit samples: t = log 2, norm (log 2)^{-1/2}.
  CHECK(norms::estimate_psi_norm_emgf(ones, 2.0).value ==
        doctest::Approx(1.0 / std::sqrt(std::log(2.0))).epsilon(1e-10));
  CHECK_THROWS_AS(norms::estimate_psi_norm_emgf(std::vector<double>(4, 0.0), 1.0),
                  NumericError);
  // Scaling is exact by construction.
  std::vector<double> data = {0.4, 1.3, 0.9, 0.2};
  std::vector<double> scaled = data;
  for (double& v : scaled) v *= 2.5;
  CHECK(norms::estimate_psi_norm_emgf(scaled, 1.0).value ==
        doctest::Approx(2.5 * norms::estimate_psi_norm_emgf(data, 1.0).value)
            .epsilon(1e-10));
}

TEST_CASE("power, product, centering transforms") {
  const norms::NormValue g =
      norms::make_psi(std::sqrt(8.0 / 3.0), 2.0, norms::Provenance::ClosedForm);
  // || X^2 ||_{psi_1} = ||X||_{psi_2}^2.
  const norms::NormValue sq = norms::power_transform_norm(g, 2.0);
  CHECK(sq.theta == doctest::Approx(1.0));
  CHECK(sq.value == doctest::Approx(8.0 / 3.0).epsilon(1e-12));

  // Product of two psi_2 factors lands in psi_1 with the product value.
  const norms::NormValue a = norms::make_psi(2.0, 2.0, norms::Provenance::ClosedForm);
  const norms::NormValue b = norms::make_psi(3.0, 2.0, norms::Provenance::ClosedForm);
  const norms::NormValue prod = norms::product_norm_bound({a, b});
  CHECK(prod.theta == doctest::Approx(1.0));
  CHECK(prod.value == doctest::Approx(6.0).epsilon(1e-12));

  // Centering multiplies by the explicit factor.
  const norms::NormValue c =
      norms::make_psi(2.0, 1.0, norms::Provenance::ClosedForm);
  CHECK(norms::centered_norm_bound(c).value ==
        doctest::Approx(2.0 * constants::centering_factor(1.0)).epsilon(1e-12));
}

TEST_CASE("vector norm estimate uses row Euclidean norms") {
  const std::vector<std::vector<double>> rows = {{3.0, 4.0}};
  CHECK(norms::vector_norm_estimate(rows, 2.0, 1).value ==
        doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("norm value serialization") {
  const auto j = norms::make_gbo(2.0, 0.5, 0.3).to_json();
  CHECK(j.at("family") == "gbo");
  CHECK(j.at("gbo_L") == doctest::Approx(0.3));
  CHECK_THROWS_AS(norms::make_gbo(2.0, 0.5, -0.1), InputError);
}
