#include "subw/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "subw/errors.hpp"
#include "subw/linalg.hpp"
#include "subw/optimize.hpp"
#include "subw/special.hpp"

namespace subw::constants {

namespace {

using subw::special::log_gamma;

constexpr double kLog2 = 0.6931471805599453;

void check_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InputError("constants: theta must be a positive finite number");
  }
}

// Feasibility margin of the gamma constant's defining inequality at k:
// negative or zero means feasible.
double gamma_margin(double k) {
  const double k2 = k * k;
  return std::expm1(2.0 / k2) + std::exp(2.0 * (1.0 - k2) / k2) / (k2 - 1.0) - 1.0;
}

// log objective of the p-indexed moment envelope:
//   g(p) = (1/p) log Gamma(p/theta + 1) - (1/theta) log p.
double log_p_objective(double p, double theta) {
  return log_gamma(p / theta + 1.0) / p - std::log(p) / theta;
}

// log objective of the C_theta maximization over k.
double log_k_objective(double k, double theta) {
  const double front = 2.0 * std::sqrt(2.0 * std::numbers::pi) / theta;
  return std::log(front) / k + std::log(k / theta) / (2.0 * k);
}

double sup_p_objective(double theta, Strategy strategy) {
  const auto f = [theta](double p) { return log_p_objective(p, theta); };
  subw::opt::ScanResult r;
  if (strategy == Strategy::Refined) {
    r = subw::opt::refined_max(f, 2.0, kPMax, 1e-2);
  } else {
    r = subw::opt::grid_max(f, 2.0, kPMax, 1e-3);
  }
  return std::exp(r.value);
}

double inf_p_objective(double theta, Strategy strategy) {
  const auto f = [theta](double p) { return log_p_objective(p, theta); };
  subw::opt::ScanResult r;
  if (strategy == Strategy::Refined) {
    r = subw::opt::refined_min(f, 2.0, kPMax, 1e-2);
  } else {
    r = subw::opt::grid_min(f, 2.0, kPMax, 1e-3);
  }
  // The objective decreases towards its p -> infinity limit for theta <= 1, so
  // the infimum over the working range sits at the upper edge; that is the
  // documented convention (range [2, kPMax]).
  return std::exp(r.value);
}

std::mutex cache_mutex;

double memoized(int which, double theta, double (*compute)(double)) {
  static std::map<std::pair<int, double>, double> cache;
  const auto key = std::make_pair(which, theta);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double v = compute(theta);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, v);
  return v;
}

double compute_c_theta(double theta) {
  const auto f = [theta](double k) { return log_k_objective(k, theta); };
  return std::exp(subw::opt::refined_max(f, 1.0, kKMax, 1e-2).value);
}

double compute_big_c(double theta) {
  if (theta > 1.0) {
    return 2.0 * (4.0 * std::numbers::e + std::pow(kLog2, 1.0 / theta));
  }
  const double sup = sup_p_objective(theta, Strategy::Refined);
  const double e3 = std::exp(3.0);
  const double pow3 = std::pow(3.0, (2.0 - theta) / (3.0 * theta));
  return 2.0 * (std::pow(kLog2, 1.0 / theta) +
                e3 * (std::exp(0.5 * log_gamma(2.0 / theta + 1.0)) + pow3 * sup));
}

double compute_a_b(double theta) {
  if (theta > 1.0) {
    const double beta = theta / (theta - 1.0);
    return 2.0 * std::numbers::e * std::pow(theta, -1.0 / theta) *
           std::pow(1.0 - 1.0 / theta, 1.0 / beta) /
           (4.0 * std::numbers::e + std::pow(kLog2, 1.0 / theta));
  }
  const double inf = inf_p_objective(theta, Strategy::Refined);
  const double e3 = std::exp(3.0);
  const double pow3 = std::pow(3.0, (2.0 - theta) / (3.0 * theta));
  return e3 * pow3 * inf / compute_big_c(theta);
}

}  // namespace

double gamma_minimal(double tol) {
  if (!(tol > 0.0)) throw InputError("gamma_minimal: tolerance must be positive");
  double lo = 1.01;   // infeasible: margin > 0
  double hi = 3.0;    // feasible: margin < 0
  if (!(gamma_margin(lo) > 0.0) || !(gamma_margin(hi) <= 0.0)) {
    throw NumericError("gamma_minimal: bracket does not straddle feasibility");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_margin(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Return the feasible end so the defining inequality holds at the result.
  return hi;
}

double c_theta_moment_const(double theta, Strategy strategy) {
  check_theta(theta);
  if (strategy == Strategy::Refined) {
    return memoized(0, theta, &compute_c_theta);
  }
  const auto f = [theta](double k) { return log_k_objective(k, theta); };
  return std::exp(subw::opt::grid_max(f, 1.0, kKMax, 1e-3).value);
}

double big_c(double theta, Strategy strategy) {
  check_theta(theta);
  if (strategy == Strategy::Refined) {
    return memoized(1, theta, &compute_big_c);
  }
  if (theta > 1.0) return compute_big_c(theta);
  const double sup = sup_p_objective(theta, Strategy::DenseGrid);
  const double e3 = std::exp(3.0);
  const double pow3 = std::pow(3.0, (2.0 - theta) / (3.0 * theta));
  return 2.0 * (std::pow(kLog2, 1.0 / theta) +
                e3 * (std::exp(0.5 * log_gamma(2.0 / theta + 1.0)) + pow3 * sup));
}

double a_b_theta(double theta, Strategy strategy) {
  check_theta(theta);
  if (strategy == Strategy::Refined) {
    return memoized(2, theta, &compute_a_b);
  }
  if (theta > 1.0) return compute_a_b(theta);
  const double inf = inf_p_objective(theta, Strategy::DenseGrid);
  const double e3 = std::exp(3.0);
  const double pow3 = std::pow(3.0, (2.0 - theta) / (3.0 * theta));
  return e3 * pow3 * inf / big_c(theta, Strategy::DenseGrid);
}

double conjugate_index(double theta) {
  if (!(theta > 1.0)) throw InputError("conjugate_index: requires theta > 1");
  return theta / (theta - 1.0);
}

double l_n(double theta, const std::vector<double>& b, Strategy strategy) {
  check_theta(theta);
  const double l2 = subw::linalg::l2_norm(b);
  if (!(l2 > 0.0)) throw InputError("l_n: degenerate weights (zero vector)");
  const double g = gamma_minimal();
  const double coef = std::pow(g, 2.0 / theta) * a_b_theta(theta, strategy);
  if (theta <= 1.0) {
    return coef * subw::linalg::linf_norm(b) / l2;
  }
  const double beta = conjugate_index(theta);
  return coef * subw::linalg::lp_norm(b, beta) / l2;
}

double d_theta(double theta) {
  check_theta(theta);
  return std::pow(theta * std::numbers::e, 1.0 / theta) / 2.0;
}

double k_theta(double theta) {
  check_theta(theta);
  return theta < 1.0 ? std::pow(2.0, 1.0 / theta) : 1.0;
}

double centering_factor(double theta) {
  check_theta(theta);
  return k_theta(theta) * (1.0 + std::pow(d_theta(theta) * kLog2, -1.0 / theta));
}

double h_bound(double t, long n, double theta, double K, Strategy strategy) {
  check_theta(theta);
  if (!(t > 0.0)) throw InputError("h_bound: t must be positive");
  if (n <= 0) throw InputError("h_bound: n must be positive");
  if (!(K > 0.0)) throw InputError("h_bound: K must be positive");
  const double half = theta / 2.0;
  const double g = gamma_minimal();
  const double front =
      2.0 * std::numbers::e * K * big_c(half, strategy) * k_theta(half) *
      (1.0 + std::pow(std::pow(std::numbers::e * half, half) * kLog2, -half));
  const double nn = static_cast<double>(n);
  const double poly = std::pow(g * g * t, 2.0 / theta);
  double tail;
  if (theta <= 2.0) {
    tail = a_b_theta(half, strategy) * poly / nn;
  } else {
    tail = a_b_theta(half, strategy) * poly / std::pow(nn, 1.0 / theta);
  }
  return front * (std::sqrt(t / nn) + tail);
}

nlohmann::ordered_json ConstantBundle::to_json() const {
  nlohmann::ordered_json j;
  j["theta"] = theta;
  j["gamma"] = gamma;
  j["c_theta"] = c_theta;
  j["big_c"] = big_c;
  j[theta <= 1.0 ? "a_theta" : "b_theta"] = a_or_b;
  j["centering_factor"] = centering;
  j["d_theta"] = d_theta;
  j["k_theta"] = k_theta;
  return j;
}

ConstantBundle make_bundle(double theta) {
  check_theta(theta);
  ConstantBundle b;
  b.theta = theta;
  b.gamma = gamma_minimal();
  b.c_theta = c_theta_moment_const(theta);
  b.big_c = big_c(theta);
  b.a_or_b = a_b_theta(theta);
  b.centering = centering_factor(theta);
  b.d_theta = d_theta(theta);
  b.k_theta = k_theta(theta);
  return b;
}

nlohmann::ordered_json reference_comparison() {
  const double theta = 0.5;
  const std::vector<double> ones(10, 1.0);

  const double c_ref = big_c(theta, Strategy::Refined);
  const double c_grid = big_c(theta, Strategy::DenseGrid);
  const double a_refd = a_b_theta(theta, Strategy::Refined);
  const double a_grid = a_b_theta(theta, Strategy::DenseGrid);
  const double l_refd = l_n(theta, ones, Strategy::Refined);
  const double l_grid = l_n(theta, ones, Strategy::DenseGrid);

  const auto rel = [](double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); };

  nlohmann::ordered_json j;
  j["theta"] = theta;
  j["computed"] = {{"big_c", c_ref}, {"a_theta", a_refd}, {"l_10", l_refd}};
  j["reference"] = {{"big_c", reference::kEnvelopeC05},
                    {"a_theta", reference::kCoefA05},
                    {"l_10", reference::kL10}};
  j["optimizer_agreement"] = {{"big_c_rel", rel(c_ref, c_grid)},
                              {"a_theta_rel", rel(a_refd, a_grid)},
                              {"l_10_rel", rel(l_refd, l_grid)}};
  j["discrepancy"] = {
      {"big_c_ratio", c_ref / reference::kEnvelopeC05},
      {"a_theta_ratio", a_refd / reference::kCoefA05},
      {"l_10_ratio", l_refd / reference::kL10},
      {"note",
       "computed values follow the displayed formulas; the reference triple is "
       "reported as previously published and does not reproduce from them"}};
  return j;
}

}  // namespace subw::constants
