#pragma once

/*
 * Explicit constants for heavy-tail concentration bounds.
 *
 * All quantities are deterministic functions of the tail index theta > 0 (and
 * occasionally a weight vector). Conventions:
 *
 *   gamma_minimal    the smallest k > 1 with
 *                    e^{2/k^2} - 1 + e^{2(1-k^2)/k^2} / (k^2 - 1) <= 1
 *                    (a universal constant, ~1.7784).
 *
 *   c_theta_moment_const
 *                    C_theta = max_{k >= 1} (2 sqrt(2 pi)/theta)^{1/k} (k/theta)^{1/(2k)},
 *                    the moment-growth constant of the phi_theta family.
 *
 *   big_c(theta)     C(theta) =
 *     theta <= 1:    2 [ log^{1/theta} 2 + e^3 ( Gamma^{1/2}(2/theta+1)
 *                        + 3^{(2-theta)/(3 theta)} sup_{p>=2} p^{-1/theta} Gamma^{1/p}(p/theta+1) ) ]
 *     theta  > 1:    2 [ 4e + (log 2)^{1/theta} ]
 *
 *   a_b_theta        A(theta) = inf_{p>=2} [ e^3 3^{(2-theta)/(3 theta)}
 *                        p^{-1/theta} Gamma^{1/p}(p/theta+1) ] / C(theta)   (theta <= 1)
 *                    B(theta) = 2e theta^{-1/theta} (1 - 1/theta)^{1/beta}
 *                        / (4e + (log 2)^{1/theta})                        (theta > 1)
 *                    with 1/theta + 1/beta = 1.
 *
 *   l_n(theta, b)    L_n = gamma^{2/theta} A(theta) ||b||_inf / ||b||_2    (theta <= 1)
 *                         gamma^{2/theta} B(theta) ||b||_beta / ||b||_2    (theta > 1)
 *
 *   centering_factor K_theta (1 + (d_theta log 2)^{-1/theta}) with
 *                    d_theta = (theta e)^{1/theta}/2 and K_theta = 2^{1/theta}
 *                    for theta in (0,1), else 1. Bounds the norm inflation of
 *                    centering: ||X - EX|| <= factor * ||X||.
 *
 *   h_bound(t,n,th)  H(t, n; theta) = 2 e K C(theta/2) K_{theta/2}
 *                        [1 + ((e theta/2)^{theta/2} log 2)^{-theta/2}] *
 *                        [ sqrt(t/n) + A(theta/2) (gamma^2 t)^{2/theta} / n          (theta <= 2)
 *                                    | B(theta/2) (gamma^2 t)^{2/theta} / n^{1/theta} (theta > 2) ]
 *
 * Every sup/inf is evaluated in log space over p in [2, 500] (or k in
 * [1, 200]); the objectives are eventually monotone, which the implementation
 * checks by flagging extrema that sit on the upper grid edge. Two independent
 * optimizer routes (dense grid vs coarse grid + golden-section) are exposed
 * through Strategy and cross-checked in the tests and the acceptance suite.
 * Default-strategy results are memoized per theta behind a mutex.
 */

#include <string>
#include <vector>

#include "json.hpp"

namespace subw::constants {

enum class Strategy { Refined, DenseGrid };

inline constexpr double kPMax = 500.0;   // upper end of the p range for sup/inf
inline constexpr double kKMax = 200.0;   // upper end of the k range for C_theta

// Universal constant gamma (minimal feasible k > 1); tol bounds the bracket.
double gamma_minimal(double tol = 1e-10);

double c_theta_moment_const(double theta, Strategy strategy = Strategy::Refined);

double big_c(double theta, Strategy strategy = Strategy::Refined);

// A(theta) for theta <= 1, B(theta) for theta > 1 (the l_n coefficient).
double a_b_theta(double theta, Strategy strategy = Strategy::Refined);

// Weighted-norm coefficient L_n(theta, b); throws on a zero weight vector.
double l_n(double theta, const std::vector<double>& b,
           Strategy strategy = Strategy::Refined);

double centering_factor(double theta);

// Conjugate index beta with 1/theta + 1/beta = 1 (theta > 1).
double conjugate_index(double theta);

double d_theta(double theta);
double k_theta(double theta);

// Operator-norm deviation level for an n x p matrix with unit-norm rows.
double h_bound(double t, long n, double theta, double K,
               Strategy strategy = Strategy::Refined);

struct ConstantBundle {
  double theta = 0.0;
  double gamma = 0.0;
  double c_theta = 0.0;   // moment-growth constant C_theta
  double big_c = 0.0;     // envelope constant C(theta)
  double a_or_b = 0.0;    // A(theta) if theta <= 1, else B(theta)
  double centering = 0.0;
  double d_theta = 0.0;
  double k_theta = 0.0;

  nlohmann::ordered_json to_json() const;
};

ConstantBundle make_bundle(double theta);

// Previously reported values kept for cross-checking; see reference_comparison.
namespace reference {
inline constexpr double kEnvelopeC05 = 2825.89;  // C(0.5)
inline constexpr double kCoefA05 = 0.07;         // A(0.5)
inline constexpr double kL10 = 0.23;             // L_10(0.5, unit weights)
}  // namespace reference

// Computes C(0.5), A(0.5) and L_10(0.5, 1_10) with both optimizer routes and
// reports them next to the reference values, including relative deviations.
nlohmann::ordered_json reference_comparison();

}  // namespace subw::constants
