#pragma once

/*
 * One-dimensional sampling laws with analytic accessors.
 *
 * Each Distribution couples a sampler with whatever closed forms the law
 * admits: mean/variance, absolute moments E|X|^r (exact series or quadrature
 * when no closed form exists), the CDF for goodness-of-fit checks, and -- where
 * available -- the moment generating function of |X|^theta used by norm
 * inversion. A `centered` flag shifts the law by its mean; accessors then
 * refer to |X - EX|.
 *
 * Samplers (all driven by an explicit RngStream):
 *   gaussian            Box-Muller
 *   uniform             [-1, 1] by inverse transform
 *   bernoulli(mu)       indicator of u < mu
 *   rademacher          +-1 with equal probability
 *   exponential(scale)  inverse transform
 *   weibull(theta)      (-log U)^{1/theta}
 *   symweibull(theta,s) random sign times s * (-log U)^{1/theta}
 *   poisson(lambda)     inversion by search (lambda <= 30 desk guard)
 *   negbinomial(mu,k)   gamma-Poisson mixture (Marsaglia-Tsang gamma)
 *   pareto(alpha,k)     inverse transform
 *   pointmass(c)        constant
 */

#include <functional>
#include <optional>
#include <string>

#include "subw/rng.hpp"

namespace subw::dist {

enum class Kind {
  Gaussian,
  Uniform,
  Bernoulli,
  Rademacher,
  Exponential,
  Weibull,
  SymWeibull,
  Poisson,
  NegBinomial,
  Pareto,
  PointMass,
};

struct Distribution {
  Kind kind = Kind::Gaussian;
  double p1 = 0.0;  // kind-specific: mu / scale / theta / lambda / alpha / c
  double p2 = 0.0;  // kind-specific: k / scale
  bool centered = false;

  std::string name() const;

  double mean() const;      // mean of the (uncentered) law
  double variance() const;

  // One draw; centered laws return X - EX.
  double sample(subw::rng::RngStream& rng) const;

  // E |X|^r (with the centering applied when `centered` is set).
  double abs_moment(double r) const;

  // CDF of the *sampled* variable (continuous laws only).
  double cdf(double x) const;
  bool has_cdf() const;

  // E exp(t |X|^theta) as an analytic callable, together with an upper end
  // t_upper of its finiteness interval (used to bracket norm inversions).
  // Throws InputError when the law/theta pair has no tractable MGF.
  struct AbsMgf {
    std::function<double(double)> fn;
    double t_upper;
  };
  AbsMgf abs_mgf(double theta) const;
  bool has_abs_mgf(double theta) const;
};

Distribution gaussian();
Distribution uniform_sym();            // Uniform[-1, 1]
Distribution bernoulli(double mu);
Distribution rademacher();
Distribution exponential(double scale);
Distribution weibull(double theta);
Distribution sym_weibull(double theta, double scale = 1.0);
Distribution poisson(double lambda);
Distribution neg_binomial(double mu, double k);
Distribution pareto(double alpha, double k);
Distribution point_mass(double c);

Distribution centered(Distribution d);

// Parses CLI syntax "name[:p1[,p2]]" with an optional "centered:" prefix,
// e.g. "exponential:1", "negbinomial:1,1", "centered:poisson:1".
Distribution parse(const std::string& text);

// Marsaglia-Tsang gamma sampler (shape > 0, scale > 0); exposed for tests.
double sample_gamma(double shape, double scale, subw::rng::RngStream& rng);

// Poisson inversion sampler with an explicit mean cap (internal callers mix
// over gamma draws and allow a higher cap than the public desk guard).
double sample_poisson(double lambda, subw::rng::RngStream& rng, double cap = 30.0);

}  // namespace subw::dist
