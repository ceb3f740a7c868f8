#pragma once

/*
 * Orlicz-type norms for heavy-tailed random variables.
 *
 * Families:
 *   psi_theta   ||X|| = inf{ C > 0 : E exp(|X|^theta / C^theta) <= 2 },
 *               computed here by inverting the MGF of |X|^theta at level 2:
 *               ||X|| = (m^{-1}(2))^{-1/theta}.
 *   phi_theta   ||X|| = sup_{k>=1} ( E|X|^{theta k} / k! )^{1/(theta k)}.
 *   GBO         the generalized Bernstein-Orlicz norm; a value is carried
 *               together with its shape coefficient L (gbo_L), and its tail is
 *               evaluated through Psi^{-1}(t) = sqrt(log(1+t)) + L log^{1/theta}(1+t).
 *
 * Closed forms implemented: bounded variables (M (log 2)^{-1/theta}), Poisson
 * and negative binomial psi_1 norms via their MGFs, the p-indexed phi_2
 * formulas for gaussian / centered Bernoulli / uniform, and the exact moment
 * series route. Estimators: the empirical moment-ratio estimator (phi) and
 * empirical-MGF inversion (psi).
 */

#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"
#include "subw/distributions.hpp"

namespace subw::norms {

enum class Family { Psi, Phi, Gbo };
enum class Provenance { ClosedForm, MgfInversion, Series, Estimated };

struct NormValue {
  double value = 0.0;
  Family family = Family::Psi;
  double theta = 0.0;
  std::optional<double> gbo_L;      // present iff family == Gbo
  Provenance provenance = Provenance::ClosedForm;
  std::optional<int> argmax_k;      // series / estimator diagnostics
  bool truncated_sup = false;       // sup attained at the k_max edge

  nlohmann::ordered_json to_json() const;
};

NormValue make_psi(double value, double theta, Provenance prov);
NormValue make_phi(double value, double theta, Provenance prov);
NormValue make_gbo(double value, double theta, double L);

// ||X||_{psi_theta} = M (log 2)^{-1/theta} for |X| <= M.
NormValue psi_norm_bounded(double bound, double theta);

// Inverts a supplied analytic MGF of |X|^theta at level 2 on (0, t_upper].
NormValue psi_norm_mgf_inversion(const std::function<double(double)>& mgf,
                                 double theta, double t_upper);

// psi_1 norm of a negative binomial with mean mu and shape k:
//   [ log( (1 - (1-q) 2^{-1/k}) / q ) ]^{-1},  q = mu / (k + mu).
NormValue psi1_norm_negbin(double mu, double k);

// psi_1 norm of Poisson(lambda): [ log(log2 / lambda + 1) ]^{-1};
// with `centered`, the triangle-inequality centering surcharge lambda/log 2 is
// added (an upper bound for ||X - lambda||).
NormValue psi1_norm_poisson(double lambda, bool centered = false);

// Definition-series phi norm from an exact moment callable m(k) = E|X|^{theta k}.
NormValue phi_norm_series(const std::function<double(int)>& moment, double theta,
                          int k_max = 60);

// Displayed p-indexed phi_2 closed forms for gaussian, centered bernoulli(mu)
// and uniform[-1,1]; supremum over the given p grid (default {2}, the grid
// under which the classical reported values 1 / 0.4582576 / 0.5773503 arise).
NormValue phi2_closed_form(const subw::dist::Distribution& d,
                           const std::vector<double>& p_grid = {2.0});

// Empirical moment-ratio estimator
//   sup_{k_min <= k <= k_max} ( (1/(n k!)) sum |X_i|^{theta k} )^{1/(theta k)}.
// Default k_min is 2 when theta == 1 and 1 otherwise (the two displayed
// variants); pass k_min explicitly to override.
NormValue estimate_phi_norm(const std::vector<double>& samples, double theta,
                            int k_min = -1, int k_max = 50);

// Empirical-MGF inversion: solve (1/n) sum exp(t |X_i|^theta) = 2 for t, then
// return t^{-1/theta}.
NormValue estimate_psi_norm_emgf(const std::vector<double>& samples, double theta);

// ||  |X|^r  ||_{psi_{theta/r}} = ||X||_{psi_theta}^r.
NormValue power_transform_norm(const NormValue& psi_norm, double r);

// || prod W_i ||_{psi_beta} <= prod ||W_i||_{psi_{alpha_i}}, 1/beta = sum 1/alpha_i.
NormValue product_norm_bound(const std::vector<NormValue>& factors);

// Centering surcharge: ||X - EX|| <= centering_factor(theta) * ||X||.
NormValue centered_norm_bound(const NormValue& psi_norm);

// Moment-ratio estimate on row Euclidean norms of a sample of vectors.
NormValue vector_norm_estimate(const std::vector<std::vector<double>>& rows,
                               double theta, int k_min = -1, int k_max = 50);

}  // namespace subw::norms
