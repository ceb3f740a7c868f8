// Sampler correctness: split-stream determinism, Kolmogorov-Smirnov
// goodness-of-fit at the 1% level for the continuous laws, moment sanity for
// the discrete ones, and the Clopper-Pearson interval against a
// bisection-on-binomial-CDF oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "subw/distributions.hpp"
#include "subw/errors.hpp"
#include "subw/montecarlo.hpp"
#include "subw/rng.hpp"

using namespace subw;

namespace {

std::vector<double> draw(const dist::Distribution& d, long n, std::uint64_t seed) {
  rng::RngStream s(seed, 0);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& v : out) v = d.sample(s);
  return out;
}

// Binomial CDF P(X <= k) by direct summation in log space.
double binom_cdf(long k, long n, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  double acc = 0.0;
  double log_choose = 0.0;  // log C(n, 0)
  for (long j = 0; j <= k; ++j) {
    if (j > 0) log_choose += std::log(static_cast<double>(n - j + 1)) -
                             std::log(static_cast<double>(j));
    acc += std::exp(log_choose + j * std::log(p) + (n - j) * std::log1p(-p));
  }
  return std::min(acc, 1.0);
}

}  // namespace

TEST_CASE("streams are deterministic and distinct") {
  rng::RngStream a(123, 7);
  rng::RngStream b(123, 7);
  rng::RngStream c(123, 8);
  bool all_same = true;
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t va = a.next_u64();
    all_same = all_same && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_same);
  CHECK(any_diff);
}

TEST_CASE("uniform draws live in [0,1) with sane mean") {
  rng::RngStream s(5, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("KS goodness of fit at the 1% level") {
  const long n = 100000;
  const double crit = mc::ks_critical(n, 0.01);
  SUBCASE("weibull(0.5)") {
    const dist::Distribution d = dist::weibull(0.5);
    CHECK(mc::ks_statistic(draw(d, n, 11), [&](double t) { return d.cdf(t); }) <
          crit);
  }
  SUBCASE("pareto(2.5,1)") {
    const dist::Distribution d = dist::pareto(2.5, 1.0);
    CHECK(mc::ks_statistic(draw(d, n, 12), [&](double t) { return d.cdf(t); }) <
          crit);
  }
  SUBCASE("exponential(1)") {
    const dist::Distribution d = dist::exponential(1.0);
    CHECK(mc::ks_statistic(draw(d, n, 13), [&](double t) { return d.cdf(t); }) <
          crit);
  }
  SUBCASE("uniform[-1,1]") {
    const dist::Distribution d = dist::uniform_sym();
    CHECK(mc::ks_statistic(draw(d, n, 14), [&](double t) { return d.cdf(t); }) <
          crit);
  }
  SUBCASE("gaussian") {
    const dist::Distribution d = dist::gaussian();
    CHECK(mc::ks_statistic(draw(d, n, 15), [&](double t) { return d.cdf(t); }) <
          crit);
  }
}

TEST_CASE("poisson and negative binomial moments") {
  const long n = 100000;
  SUBCASE("poisson(1) mean within 3 sigma") {
    const std::vector<double> x = draw(dist::poisson(1.0), n, 21);
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(n);
    CHECK(std::fabs(m - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("negbinomial(1,1) is geometric(1/2)") {
    const std::vector<double> x = draw(dist::neg_binomial(1.0, 1.0), n, 22);
    long zeros = 0;
    double m = 0.0;
    for (double v : x) {
      if (v == 0.0) ++zeros;
      m += v;
    }
    m /= static_cast<double>(n);
    // P(Y=0) = 1/2 and E Y = 1; sd of the mean is sqrt(2/n).
    CHECK(std::fabs(static_cast<double>(zeros) / n - 0.5) < 0.006);
    CHECK(std::fabs(m - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
  }
  SUBCASE("pareto support") {
    for (double v : draw(dist::pareto(2.5, 1.0), 1000, 23)) CHECK(v >= 1.0);
  }
  SUBCASE("lambda guard") {
    CHECK_THROWS_AS(dist::poisson(31.0), InputError);
    CHECK_THROWS_AS(dist::neg_binomial(31.0, 1.0), InputError);
  }
}

TEST_CASE("clopper_pearson endpoints and oracle") {
  const mc::Interval zero = mc::clopper_pearson(0, 100, 0.95);
  CHECK(zero.lower == doctest::Approx(0.0));
  const mc::Interval full = mc::clopper_pearson(100, 100, 0.95);
  CHECK(full.upper == doctest::Approx(1.0));

  const mc::Interval iv = mc::clopper_pearson(5, 100, 0.95);
  CHECK(iv.lower < 0.05);
  CHECK(iv.upper > 0.05);

  // Oracle: lower solves P(Bin(n,p) >= s) = alpha/2, upper solves
  // P(Bin(n,p) <= s) = alpha/2; bisection on the (increasing) tail probability.
  auto bisect = [](const std::function<double(double)>& f, double target) {
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double alpha = 0.05;
  const double lower_oracle = bisect(
      [](double p) { return 1.0 - binom_cdf(4, 100, p); }, alpha / 2.0);
  const double upper_oracle =
      bisect([](double p) { return 1.0 - binom_cdf(5, 100, p); }, 1.0 - alpha / 2.0);
  CHECK(iv.lower == doctest::Approx(lower_oracle).epsilon(1e-6));
  CHECK(iv.upper == doctest::Approx(upper_oracle).epsilon(1e-6));
}

TEST_CASE("interval always contains the empirical proportion") {
  for (long s : {0L, 1L, 17L, 50L, 99L, 100L}) {
    const mc::Interval iv = mc::clopper_pearson(s, 100, 0.99);
    const double freq = static_cast<double>(s) / 100.0;
    CHECK(iv.lower <= freq + 1e-12);
    CHECK(iv.upper >= freq - 1e-12);
  }
}

TEST_CASE("distribution parsing") {
  const dist::Distribution a = dist::parse("exponential:1");
  CHECK(a.kind == dist::Kind::Exponential);
  CHECK(a.p1 == doctest::Approx(1.0));
  CHECK_FALSE(a.centered);

  const dist::Distribution b = dist::parse("centered:poisson:1");
  CHECK(b.kind == dist::Kind::Poisson);
  CHECK(b.centered);
  // mean() reports the uncentered law; centering applies to sample().
  CHECK(b.mean() == doctest::Approx(1.0));
  rng::RngStream s(4, 0);
  double acc = 0.0;
  for (int i = 0; i < 20000; ++i) acc += b.sample(s);
  CHECK(std::fabs(acc / 20000.0) < 0.03);

  CHECK_THROWS_AS(dist::parse("nosuch:1"), InputError);
  CHECK_THROWS_AS(dist::parse("weibull"), InputError);
}

TEST_CASE("replicate is thread-count invariant") {
  const mc::Statistic stat = [](rng::RngStream& s) { return s.uniform(); };
  const std::vector<double> one = mc::replicate(stat, 500, 99, 1);
  const std::vector<double> four = mc::replicate(stat, 500, 99, 4);
  REQUIRE(one.size() == four.size());
  bool same = true;
  for (std::size_t i = 0; i < one.size(); ++i) same = same && one[i] == four[i];
  CHECK(same);
}
