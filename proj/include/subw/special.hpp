#pragma once

/*
 * Special functions used across the library:
 *   - log_gamma / log_factorial: thin wrappers over std::lgamma (relative
 *     accuracy well below 1e-12 for the argument ranges used here); every
 *     moment/constant objective works in log space through these.
 *   - regularized incomplete beta I_x(a,b) via the Lentz continued fraction,
 *     and its inverse in x (bisection + Newton polish). These back the exact
 *     Clopper-Pearson binomial interval.
 *   - kolmogorov_tail: asymptotic Kolmogorov-Smirnov tail Q(k), used by the
 *     sampler goodness-of-fit property tests.
 */

namespace subw::special {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// log(n!) for n >= 0.
double log_factorial(int n);

// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
double incomplete_beta(double a, double b, double x);

// Inverse of x -> I_x(a,b) at probability p in [0,1].
double incomplete_beta_inv(double a, double b, double p);

// Kolmogorov distribution tail Q(k) = 2 * sum_{j>=1} (-1)^{j-1} exp(-2 j^2 k^2).
double kolmogorov_tail(double k);

}  // namespace subw::special
