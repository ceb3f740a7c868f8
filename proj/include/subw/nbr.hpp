// Negative binomial regression with known dispersion k.
//
// Model: responses Y_i | X_i ~ NB(mean mu_i, dispersion k) with
// log mu_i = X_i^T beta.  Per-observation loss in the linear predictor u:
//
//   loss(u, y)   = -y u + (y + k) log(k + e^u)
//   dloss(u, y)  = -k (y - e^u) / (k + e^u)
//   ddloss(u, y) = k (y + k) e^u / (k + e^u)^2  (> 0: the problem is convex)
//
// fit_nbr minimizes the empirical loss by Newton steps with halving.
// delta_n(beta) = (3/2) ||Q_n^{-1}(beta) Z_n(beta)||_2 drives the sandwich
//   (1/2) delta_n(beta*) <= ||beta_hat - beta*||_2 <= delta_n(beta*),
// valid whenever max_i ||X_i||_2 delta_n(beta*) <= log(4/3)/3.
//
// r_n_bound evaluates the explicit high-probability radius
//   R_n = (6 M_BX M_X / C_min) [ sqrt(2p/n log(2p/delta))
//         + (1/n) sqrt(p log(2p/delta)) ] log^{1/theta}(2np/delta),
// M_BX = M_X + B/log 2, together with the sample-size condition
// R_n I_n <= log(4/3)/3.  c_n_probability is the two-exponential event
// probability attached to the radius (evaluated at t = C_min/4 with
// b = (k/n) M_X^2 (1,...,1)); the radius holds with probability at least
// 1 - 2 p^2 c_n - delta - (an unverified design-dependent residual).
//
// nbr_experiment replicates a bounded intercept-plus-sign design, fits, and
// reports how often the sandwich and its condition hold, plus the (usually
// vacuous at desk scale) R_n accounting.

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "subw/linalg.hpp"
#include "subw/montecarlo.hpp"

namespace subw::nbr {

double nb_loss(double u, double y, double k);
double nb_dloss(double u, double y, double k);
double nb_ddloss(double u, double y, double k);

// Empirical loss, score vector, and Hessian matrix at beta, all 1/n-averaged.
double empirical_loss(const linalg::Matrix& x, const std::vector<double>& y,
                      double k, const linalg::Vector& beta);
linalg::Vector score(const linalg::Matrix& x, const std::vector<double>& y,
                     double k, const linalg::Vector& beta);
linalg::Matrix hessian(const linalg::Matrix& x, const std::vector<double>& y,
                       double k, const linalg::Vector& beta);

struct FitResult {
  linalg::Vector beta;
  int iterations = 0;
  double score_norm = 0.0;
};

// Newton with step-halving until ||score||_2 <= tol.  `init` defaults to the
// zero vector.  Throws NumericError on a singular Hessian or when max_iter is
// exhausted; p <= 20 desk guard.
FitResult fit_nbr(const linalg::Matrix& x, const std::vector<double>& y, double k,
                  double tol = 1e-10, int max_iter = 100,
                  linalg::Vector init = {});

// (3/2) ||Q_n^{-1}(beta) Z_n(beta)||_2.
double delta_n(const linalg::Matrix& x, const std::vector<double>& y, double k,
               const linalg::Vector& beta);

struct NbrBoundInputs {
  long n = 0;
  long p = 0;
  double delta = 0.05;
  double m_x = 1.0;    // uniform design bound max_i ||X_i||_infty-type constant
  double b = 0.0;      // bound on |X_i^T beta*|
  double c_min = 1.0;  // population Hessian eigenvalue floor
  double theta = 1.0;  // sub-Weibull index of the design/response coupling
  double i_n = 1.0;    // design bound max_i ||X_i||_2
};

struct RnBound {
  double r_n = 0.0;
  double condition_lhs = 0.0;  // R_n * I_n
  bool condition_ok = false;   // condition_lhs <= log(4/3)/3
};

RnBound r_n_bound(const NbrBoundInputs& in);

// Two-exponential event probability at t = C_min/4 (see file comment).
double c_n_probability(const NbrBoundInputs& in, double k);

struct NbrConfig {
  long n = 2000;
  long p = 5;
  double k = 30.0;
  // Defaults to (log 15, 0.1, -0.1, 0.05, 0, ...) padded/truncated to p.
  std::vector<double> beta_star;
  long reps = 200;
  double delta = 0.05;
  double c_min = 8.0;

  void validate() const;
  linalg::Vector resolved_beta_star() const;
  nlohmann::ordered_json to_json() const;
};

struct NbrReport {
  nlohmann::ordered_json config;
  std::uint64_t seed = 0;
  long reps = 0;
  double r_n = 0.0;
  bool rn_condition_ok = false;
  double c_n = 1.0;
  double event_bound = 1.0;  // min(1, 2 p^2 c_n + delta); vacuous at desk scale
  long sandwich_hits = 0;
  long condition_hits = 0;
  long hessian_proxy_hits = 0;
  long rn_hits = 0;
  long fit_failures = 0;
  double mean_delta_n = 0.0;
  double mean_error = 0.0;
  bool pass = false;  // sandwich and condition rates both >= 0.95

  nlohmann::ordered_json to_json() const;
};

// Intercept-plus-random-signs design: X_i = (1, s_1, ..., s_{p-1}) with iid
// Rademacher signs, responses NB(exp(X_i^T beta*), k).  Per replicate: fit,
// then record the delta_n sandwich, its norm condition, the Hessian
// eigenvalue proxy (>= C_min/2), and |error| <= R_n.
NbrReport nbr_experiment(const NbrConfig& cfg, std::uint64_t seed, int jobs = 1);

}  // namespace subw::nbr
