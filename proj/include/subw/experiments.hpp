#pragma once

/*
 * Canned Monte Carlo experiments wiring the closed-form tail curves from
 * tails.hpp against seeded sampling. Each experiment draws a fresh i.i.d.
 * configuration per replicate, evaluates one scalar statistic, and checks the
 * claimed bound on a fixed grid through mc::validate_bound; a point fails only
 * when the Clopper-Pearson lower limit of the empirical frequency exceeds the
 * curve.
 *
 * Registry (run_tail_experiment by name):
 *   psi_tail_weibull        Weibull(1/2) draw vs. its psi_{1/2} tail
 *   phi_tail_exponential    Exp(1) draw vs. its phi_1 moment-ratio tail
 *   subexp_sum_exponential  sum of 50 centered Exp(1) vs. the Bernstein-type
 *                           sub-exponential sum bound (norm from MGF inversion)
 *   nb_sum                  mean of 100 centered NB(1,1) vs. the closed-form
 *                           negative-binomial scale bound
 *   gbo_sum_coverage        mean of 50 symmetrized-Weibull(1/2) draws vs. the
 *                           generalized Bernstein-Orlicz deviation radius
 *   phi_mean_coverage       mean of 100 centered Exp(1) vs. the phi_1
 *                           confidence-interval radius at alpha = 0.05
 */

#include <cstdint>
#include <string>
#include <vector>

#include "subw/montecarlo.hpp"

namespace subw::mc {

std::vector<std::string> tail_experiment_names();

SimReport run_tail_experiment(const std::string& name, long reps, double level,
                              std::uint64_t seed, int jobs = 1);

}  // namespace subw::mc
