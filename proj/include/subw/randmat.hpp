// Non-asymptotic extreme-eigenvalue experiments for tall random matrices.
//
// Rows are isotropic (identity covariance) with iid unit-variance entries
// drawn from one of three laws: gaussian, rademacher, or a symmetrized
// Weibull rescaled to unit variance.  For an n x p matrix A the interval
//
//   sqrt(1 - H^2) <= lambda_min(A)/sqrt(n) <= lambda_max(A)/sqrt(n) <= sqrt(1 + H^2)
//
// holds with probability >= 1 - 2 e^{-s^2}, where H = H(c p + s^2, n; theta)
// is the explicit envelope from constants::h_bound and the free constant c
// must satisfy c >= n log 9 / p.  At desk scale H typically exceeds 1: the
// lower endpoint clamps to 0 and the configuration is flagged vacuous —
// reported honestly, never as a pass.
//
// Eigenvalues of the Gram matrix (1/n) A^T A come from the dense cyclic
// Jacobi solver in linalg (deterministic, p <= 400 guard).

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "subw/linalg.hpp"
#include "subw/montecarlo.hpp"
#include "subw/rng.hpp"

namespace subw::randmat {

enum class RowLaw { Gaussian, Rademacher, SymWeibull };

std::string row_law_name(RowLaw law);
RowLaw parse_row_law(const std::string& text);

struct MatrixSpec {
  long n = 0;
  long p = 0;
  RowLaw law = RowLaw::Gaussian;
  double theta = 2.0;  // tail index of the row norm bound (and entry law for SymWeibull)
  double K = 1.0;      // row psi_theta norm bound

  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// n x p matrix of iid mean-zero unit-variance entries per the row law.
linalg::Matrix sample_matrix(const MatrixSpec& spec, rng::RngStream& stream);

struct EigenResult {
  double lambda_min = 0.0;  // extreme eigenvalues of (1/n) A^T A
  double lambda_max = 0.0;
  int sweeps = 0;
};

// Jacobi spectrum extremes of the normalized Gram matrix.
EigenResult gram_extremes(const linalg::Matrix& a);

struct BaiYinInterval {
  double lower = 0.0;  // sqrt(max(0, 1 - H^2))
  double upper = 0.0;  // sqrt(1 + H^2)
  double h = 0.0;
  bool vacuous = false;  // H >= 1: the lower endpoint carries no information
  nlohmann::ordered_json to_json() const;
};

// Evaluates the interval at t = c p + s^2.  Requires c >= n log 9 / p.
BaiYinInterval bai_yin_interval(long n, long p, double theta, double K, double s,
                                double c);

// Replicates {sample, Gram extremes, inside-interval check} and compares the
// miss frequency against 2 e^{-s^2} with Clopper-Pearson margins.  The report
// passes only when there are no violations AND the interval is non-vacuous.
mc::SimReport bai_yin_experiment(const MatrixSpec& spec, double s, double c,
                                 long reps, double level, std::uint64_t seed,
                                 int jobs = 1);

}  // namespace subw::randmat
