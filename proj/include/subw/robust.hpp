// Log-truncated Z-estimation of the mean for heavy-tailed data: score
// construction, root finding, tuning rules, deviation bounds, and a
// Monte Carlo certificate for sub-Weibull estimators.
//
// The estimator solves  Z_alpha(theta) = (1/(n alpha)) sum_i phi_c(alpha (X_i - theta)) = 0
// where phi_c(x) = sign(x) log(1 + |x| + c(|x|)) and c is an *admissible*
// influence dampener: c(|x|) >= sqrt(1 + x^2) - 1, a weak triangle inequality
// c(x + y) <= c2 (c(x) + c(y)), and a scaling majorant f with f(t)/|t|
// increasing and vanishing at 0.  The power family c(x) = |x|^beta / beta,
// beta in (1, 2], is the shipped instance; it keeps the estimator consistent
// under infinite variance (only a finite central beta-moment is needed).
//
// Tuning and guarantees:
//  - choose_alpha: the moment-order rule alpha = (1/2)(2 beta log(1/eps) /
//    (n v_beta))^{1/beta}, with its explicit sample-size condition;
//  - choose_alpha_general: the c-function rule alpha = f^{-1}(log(1/delta) /
//    (c2 sum_i E c(X_i - mu_n)));
//  - chen_bound: the closed-form O(n^{-(beta-1)/beta}) deviation radius paired
//    with choose_alpha;
//  - deviation_bound: |g_alpha^{-1}(-2 log(1/delta)/(n alpha))| with
//    g_alpha(t) = t + (c2/alpha) c(alpha t), inverted on the monotone branch
//    through 0;
//  - confidence_endpoints: theta_+/- as the extreme roots of
//    B_n^{+/-}(theta) = mu_n - theta +/- [avg E c(alpha(X_i - theta))/alpha +
//    log(1/delta)/(n alpha)];
//  - certify_subweibull_estimator: empirical check of the (A, B, C)-subW(theta)
//    deviation property P(|est - mu| <= B (t/n)^{1/theta}) >= 1 - C e^{-t}.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subw/distributions.hpp"
#include "subw/montecarlo.hpp"

namespace subw::robust {

struct CFunction {
  std::function<double(double)> c;      // x >= 0 -> nonnegative dampener
  double c2 = 1.0;                      // weak-triangle constant >= 1
  std::function<double(double)> f;      // scaling majorant
  std::function<double(double)> f_inv;  // inverse of f on [0, inf)
  std::string label;
};

// Grid validation of the admissibility requirements; throws InputError with
// the failing check named.
void validate_cfunction(const CFunction& cf);

// Power-family instance c(x) = |x|^beta / beta for beta in (1, 2]:
// c2 = 2^{beta-1}, f(t) = |t|^beta.
CFunction power_c(double beta);

// Tuning knobs a caller threads through the estimator pipeline.
struct RobustConfig {
  double alpha = 1.0;                // truncation scale alpha_n
  double delta = 0.05;               // confidence parameter in (0, 1/2)
  std::optional<double> beta;        // moment order in (1, 2]
  std::optional<double> v_beta;      // central beta-moment
};

// phi_c(x) = sign(x) log(1 + |x| + c(|x|)): odd, non-decreasing, and
// log-truncated (grows like log |x|).
double phi_c(double x, const CFunction& cf);

// Z_alpha(theta) = (1/(n alpha)) sum_i phi_c(alpha (x_i - theta)).
double z_score(double theta, const std::vector<double>& samples, double alpha,
               const CFunction& cf);

// Root of the non-increasing theta -> Z_alpha(theta), by bisection on
// [min - 1, max + 1] (expanded geometrically if needed).
double solve_z(const std::vector<double>& samples, double alpha,
               const CFunction& cf, double tol = 1e-12);

struct AlphaChoice {
  double alpha = 0.0;
  double n_required = 0.0;  // sample-size lower bound of the moment-order rule
  bool condition_ok = false;
  double beta = 0.0;
  double epsilon = 0.0;
  double v_beta = 0.0;
  nlohmann::ordered_json to_json() const;
};

// Moment-order tuning: alpha = (1/2)(2 beta log(1/eps) / (n v_beta))^{1/beta},
// valid once n >= ((2 v_beta + 1)/beta)^{beta/(beta-1)} * 2 beta log(1/eps) / v_beta.
// condition_ok records whether n clears that threshold (a warning, not an error).
AlphaChoice choose_alpha(double n, double beta, double epsilon, double v_beta);

// General rule: smallest admissible alpha = f^{-1}(log(1/delta) /
// (c2 * sum_c_moments)) where sum_c_moments = sum_i E c(X_i - mu_n).
double choose_alpha_general(double sum_c_moments, double delta, const CFunction& cf);

// |g_alpha^{-1}(-2 log(1/delta)/(n alpha))| for g_alpha(t) = t + (c2/alpha) c(alpha t),
// inverted on the monotone branch through 0 (|t| below the first stationary
// point). Throws NumericError when the confidence level is unattainable at
// this (n, alpha).
double deviation_bound(double n, double alpha, double delta, const CFunction& cf);

// Closed-form deviation radius paired with choose_alpha:
//   2 (2 beta log(1/eps)/n)^{(beta-1)/beta} v_beta^{1/beta}
//     / (beta - (2 beta log(1/eps)/(n v_beta))^{(beta-1)/beta}).
double chen_bound(double n, double beta, double epsilon, double v_beta);

struct Endpoints {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
};

// Extreme roots of B_n^{+/-}: avg_c_moment(alpha, theta) must return
// (1/n) sum_i E c(alpha (X_i - theta)).  theta_plus is the smallest root of
// B_n^+ right of mu_n, theta_minus the largest root of B_n^- left of mu_n.
// Throws NumericError("sample condition unmet") when a branch never changes
// sign within the doubling budget.
Endpoints confidence_endpoints(
    const std::function<double(double, double)>& avg_c_moment, double mu_n,
    double n, double alpha, double delta);

// Empirical certificate of the (A, B, C)-subW(theta) property for an
// estimator mapping an n-sample of `d` to a scalar: for each t in
// t_grid ∩ (0, A) the miss frequency of |est - mean| > B (t/n)^{1/theta}
// is checked against C e^{-t} with Clopper-Pearson margins at `level`.
mc::SimReport certify_subweibull_estimator(
    const std::function<double(const std::vector<double>&)>& estimator,
    const dist::Distribution& d, long n, double theta_index, double A, double B,
    double C, const std::vector<double>& t_grid, long reps, double level,
    std::uint64_t seed, int jobs = 1);

}  // namespace subw::robust
