#pragma once

/*
 * Monte Carlo validation harness.
 *
 *  - clopper_pearson: exact binomial confidence interval via the regularized
 *    incomplete beta function.
 *  - validate_bound: replicates a scalar statistic over independent seeded
 *    streams and checks a claimed tail bound P(stat >= t) <= bound(t) on a t
 *    grid. A point is a *violation* when the Clopper-Pearson lower confidence
 *    limit of the empirical frequency exceeds the bound.
 *  - ks_statistic / ks_critical: Kolmogorov-Smirnov distance of a sample from
 *    an exact CDF, used by the sampler goodness-of-fit tests.
 *
 * Replicate r always uses RngStream(seed, r), so reports are byte-identical
 * for any thread count.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "subw/rng.hpp"

namespace subw::mc {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact two-sided Clopper-Pearson interval at the given confidence level.
Interval clopper_pearson(long successes, long trials, double level);

struct BoundCheckPoint {
  double t = 0.0;
  double empirical_freq = 0.0;
  double cp_lower = 0.0;
  double cp_upper = 1.0;
  double bound = 1.0;
  bool violation = false;
};

struct SimReport {
  std::string experiment;
  nlohmann::ordered_json config;  // caller-provided echo of the configuration
  std::uint64_t seed = 0;
  long reps = 0;
  double level = 0.0;
  std::vector<BoundCheckPoint> points;
  int violations = 0;
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};

using Statistic = std::function<double(subw::rng::RngStream&)>;
using BoundFn = std::function<double(double)>;

// Runs `reps` replicates of `stat`, then checks P(stat >= t) <= bound(t) for
// every t in t_grid with Clopper-Pearson intervals at `level`. `jobs` splits
// the replicate loop across threads (results independent of jobs).
SimReport validate_bound(const std::string& experiment, const Statistic& stat,
                         const std::vector<double>& t_grid, const BoundFn& bound,
                         long reps, double level, std::uint64_t seed, int jobs = 1);

// Runs the replicate loop only, returning one statistic value per replicate.
std::vector<double> replicate(const Statistic& stat, long reps, std::uint64_t seed,
                              int jobs = 1);

// Kolmogorov-Smirnov distance between the sample and the exact CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Asymptotic critical value at significance alpha (e.g. 1.6276/sqrt(n) at 1%).
double ks_critical(long n, double alpha);

}  // namespace subw::mc
