#include "subw/robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subw/errors.hpp"

namespace subw::robust {

namespace {

// Log-spaced admissibility grid shared by the validation checks.
std::vector<double> validation_grid() {
  std::vector<double> g;
  for (double x = 1e-3; x <= 1.0e3; x *= 1.25) g.push_back(x);
  return g;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("robust: alpha must be positive and finite");
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw InputError("robust: delta must lie in (0, 1/2)");
  }
}

}  // namespace

void validate_cfunction(const CFunction& cf) {
  if (!cf.c || !cf.f || !cf.f_inv) {
    throw InputError("robust: CFunction callables must all be set");
  }
  if (!(cf.c2 >= 1.0)) {
    throw InputError("robust: weak-triangle constant c2 must be >= 1");
  }
  const std::vector<double> grid = validation_grid();
  for (double x : grid) {
    const double cx = cf.c(x);
    if (!(cx >= 0.0)) {
      throw InputError("robust: c(x) must be non-negative (failed at x = " +
                       std::to_string(x) + ")");
    }
    if (cx + 1.0 < std::sqrt(1.0 + x * x) - 1e-12) {
      throw InputError("robust: admissibility c(x) >= sqrt(1+x^2)-1 failed at x = " +
                       std::to_string(x));
    }
  }
  // Weak triangle inequality, spot-checked on grid pairs.
  for (double x : grid) {
    for (double y : {x, 2.0 * x, 0.5 * x}) {
      if (cf.c(x + y) > cf.c2 * (cf.c(x) + cf.c(y)) * (1.0 + 1e-12)) {
        throw InputError("robust: weak triangle inequality failed at (x, y) = (" +
                         std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  // Scaling majorant: f(t)/|t| increasing, vanishing at 0, and f_inv inverts f.
  double prev_ratio = 0.0;
  for (double t : grid) {
    const double ratio = cf.f(t) / t;
    if (ratio + 1e-12 < prev_ratio) {
      throw InputError("robust: f(t)/t must be non-decreasing (failed at t = " +
                       std::to_string(t) + ")");
    }
    prev_ratio = ratio;
    const double round_trip = cf.f_inv(cf.f(t));
    if (std::fabs(round_trip - t) > 1e-8 * std::max(1.0, t)) {
      throw InputError("robust: f_inv does not invert f at t = " + std::to_string(t));
    }
  }
  if (cf.f(1e-12) / 1e-12 > 1e-3) {
    throw InputError("robust: f(t)/t must vanish at 0");
  }
}

CFunction power_c(double beta) {
  if (!(beta > 1.0) || !(beta <= 2.0)) {
    throw InputError("robust: power_c needs beta in (1, 2]");
  }
  CFunction cf;
  cf.c = [beta](double x) { return std::pow(std::fabs(x), beta) / beta; };
  cf.c2 = std::pow(2.0, beta - 1.0);
  cf.f = [beta](double t) { return std::pow(std::fabs(t), beta); };
  cf.f_inv = [beta](double y) { return std::pow(y, 1.0 / beta); };
  cf.label = "power(" + std::to_string(beta) + ")";
  validate_cfunction(cf);
  return cf;
}

double phi_c(double x, const CFunction& cf) {
  const double ax = std::fabs(x);
  const double v = std::log1p(ax + cf.c(ax));
  return x < 0.0 ? -v : v;
}

double z_score(double theta, const std::vector<double>& samples, double alpha,
               const CFunction& cf) {
  check_alpha(alpha);
  if (samples.empty()) throw InputError("robust: empty sample");
  double s = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x)) throw InputError("robust: non-finite sample value");
    s += phi_c(alpha * (x - theta), cf);
  }
  return s / (static_cast<double>(samples.size()) * alpha);
}

double solve_z(const std::vector<double>& samples, double alpha,
               const CFunction& cf, double tol) {
  check_alpha(alpha);
  if (samples.empty()) throw InputError("robust: empty sample");
  if (!(tol > 0.0)) throw InputError("robust: tol must be positive");
  for (double x : samples) {
    if (!std::isfinite(x)) throw InputError("robust: non-finite sample value");
  }
  const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn_it - 1.0;
  double hi = *mx_it + 1.0;
  // Z is non-increasing in theta: positive left of the root set, negative
  // right of it.  Expand geometrically in the unlikely case the initial
  // bracket misses the sign change.
  double z_lo = z_score(lo, samples, alpha, cf);
  double z_hi = z_score(hi, samples, alpha, cf);
  double width = hi - lo;
  for (int grow = 0; grow < 60 && (z_lo < 0.0 || z_hi > 0.0); ++grow) {
    if (z_lo < 0.0) {
      lo -= width;
      z_lo = z_score(lo, samples, alpha, cf);
    }
    if (z_hi > 0.0) {
      hi += width;
      z_hi = z_score(hi, samples, alpha, cf);
    }
    width *= 2.0;
  }
  if (z_lo < 0.0 || z_hi > 0.0) {
    throw NumericError("robust: failed to bracket the Z root");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double z = z_score(mid, samples, alpha, cf);
    if (std::fabs(z) <= tol || hi - lo <= tol * std::max(1.0, std::fabs(mid))) {
      return mid;
    }
    if (z > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

nlohmann::ordered_json AlphaChoice::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["n_required"] = n_required;
  j["condition_ok"] = condition_ok;
  j["beta"] = beta;
  j["epsilon"] = epsilon;
  j["v_beta"] = v_beta;
  return j;
}

AlphaChoice choose_alpha(double n, double beta, double epsilon, double v_beta) {
  if (!(n >= 1.0)) throw InputError("robust: n must be >= 1");
  if (!(beta > 1.0) || !(beta <= 2.0)) {
    throw InputError("robust: beta must lie in (1, 2]");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw InputError("robust: epsilon must lie in (0, 1)");
  }
  if (!(v_beta > 0.0)) throw InputError("robust: v_beta must be positive");
  const double log_eps = std::log(1.0 / epsilon);
  AlphaChoice out;
  out.beta = beta;
  out.epsilon = epsilon;
  out.v_beta = v_beta;
  out.alpha = 0.5 * std::pow(2.0 * beta * log_eps / (n * v_beta), 1.0 / beta);
  out.n_required = std::pow((2.0 * v_beta + 1.0) / beta, beta / (beta - 1.0)) *
                   2.0 * beta * log_eps / v_beta;
  out.condition_ok = n >= out.n_required;
  return out;
}

double choose_alpha_general(double sum_c_moments, double delta, const CFunction& cf) {
  check_delta(delta);
  if (!(sum_c_moments > 0.0)) {
    throw InputError("robust: sum of c-moments must be positive");
  }
  return cf.f_inv(std::log(1.0 / delta) / (cf.c2 * sum_c_moments));
}

double deviation_bound(double n, double alpha, double delta, const CFunction& cf) {
  if (!(n >= 1.0)) throw InputError("robust: n must be >= 1");
  check_alpha(alpha);
  check_delta(delta);
  const double target = -2.0 * std::log(1.0 / delta) / (n * alpha);
  const auto g = [&cf, alpha](double t) {
    return t + (cf.c2 / alpha) * cf.c(alpha * std::fabs(t));
  };
  // March t downward from 0: g(t) ~ t near 0, so g decreases first; stop at
  // the first point at or below the target, or bail out when g turns back up
  // before reaching it (the target is then beyond the monotone branch).
  double prev_t = 0.0;
  double prev_g = 0.0;
  double step = std::min(1.0, std::fabs(target));
  bool bracketed = false;
  for (int it = 0; it < 200; ++it) {
    const double t = prev_t - step;
    const double gt = g(t);
    if (gt <= target) {
      bracketed = true;
      prev_t = t;  // reuse prev_t as the far end of the bracket below
      break;
    }
    if (gt >= prev_g) {
      throw NumericError(
          "robust: confidence level unattainable at this (n, alpha) — the "
          "monotone branch of g does not reach the target");
    }
    prev_g = gt;
    prev_t = t;
    step *= 2.0;
  }
  if (!bracketed) {
    throw NumericError("robust: failed to bracket the deviation radius");
  }
  double lo = prev_t;       // g(lo) <= target
  double hi = prev_t + step;  // last point with g(hi) > target (or 0)
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= target) lo = mid; else hi = mid;
  }
  return std::fabs(0.5 * (lo + hi));
}

double chen_bound(double n, double beta, double epsilon, double v_beta) {
  if (!(n >= 1.0)) throw InputError("robust: n must be >= 1");
  if (!(beta > 1.0) || !(beta <= 2.0)) {
    throw InputError("robust: beta must lie in (1, 2]");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw InputError("robust: epsilon must lie in (0, 1)");
  }
  if (!(v_beta > 0.0)) throw InputError("robust: v_beta must be positive");
  const double rate = (beta - 1.0) / beta;
  const double base = 2.0 * beta * std::log(1.0 / epsilon);
  const double denom = beta - std::pow(base / (n * v_beta), rate);
  if (!(denom > 0.0)) {
    throw NumericError("robust: chen bound denominator non-positive (n too small)");
  }
  return 2.0 * std::pow(base / n, rate) * std::pow(v_beta, 1.0 / beta) / denom;
}

Endpoints confidence_endpoints(
    const std::function<double(double, double)>& avg_c_moment, double mu_n,
    double n, double alpha, double delta) {
  if (!avg_c_moment) throw InputError("robust: avg_c_moment callable must be set");
  if (!(n >= 1.0)) throw InputError("robust: n must be >= 1");
  check_alpha(alpha);
  check_delta(delta);
  const double slack = std::log(1.0 / delta) / (n * alpha);
  const auto b_plus = [&](double theta) {
    return mu_n - theta + avg_c_moment(alpha, theta) / alpha + slack;
  };
  const auto b_minus = [&](double theta) {
    return mu_n - theta - avg_c_moment(alpha, theta) / alpha - slack;
  };
  // theta_plus: B+ is positive at mu_n and must dip negative to the right;
  // scan by doubling until the sign flips, then bisect for the first
  // (smallest) root. Mirror image for theta_minus.
  const auto first_root_rightward = [&](const std::function<double(double)>& fn) {
    double prev = mu_n;
    double fprev = fn(prev);
    if (!(fprev > 0.0)) return prev;  // degenerate: already at a root
    double step = 1.0 / alpha / std::max(1.0, n);
    for (int it = 0; it < 60; ++it) {
      const double next = prev + step;
      if (fn(next) <= 0.0) {
        double lo = prev, hi = next;
        for (int b = 0; b < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++b) {
          const double mid = 0.5 * (lo + hi);
          if (fn(mid) > 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
      }
      prev = next;
      step *= 2.0;
    }
    throw NumericError("robust: sample condition unmet (B+ never changes sign)");
  };
  const auto first_root_leftward = [&](const std::function<double(double)>& fn) {
    double prev = mu_n;
    double fprev = fn(prev);
    if (!(fprev < 0.0)) return prev;
    double step = 1.0 / alpha / std::max(1.0, n);
    for (int it = 0; it < 60; ++it) {
      const double next = prev - step;
      if (fn(next) >= 0.0) {
        double lo = next, hi = prev;
        for (int b = 0; b < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++b) {
          const double mid = 0.5 * (lo + hi);
          if (fn(mid) < 0.0) hi = mid; else lo = mid;
        }
        return 0.5 * (lo + hi);
      }
      prev = next;
      step *= 2.0;
    }
    throw NumericError("robust: sample condition unmet (B- never changes sign)");
  };
  Endpoints ep;
  ep.theta_plus = first_root_rightward(b_plus);
  ep.theta_minus = first_root_leftward(b_minus);
  return ep;
}

mc::SimReport certify_subweibull_estimator(
    const std::function<double(const std::vector<double>&)>& estimator,
    const dist::Distribution& d, long n, double theta_index, double A, double B,
    double C, const std::vector<double>& t_grid, long reps, double level,
    std::uint64_t seed, int jobs) {
  if (!estimator) throw InputError("robust: estimator callable must be set");
  if (n < 1) throw InputError("robust: n must be >= 1");
  if (!(theta_index > 0.0)) throw InputError("robust: theta index must be positive");
  if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0)) {
    throw InputError("robust: A, B, C must be positive");
  }
  std::vector<double> radii;
  for (double t : t_grid) {
    if (t > 0.0 && t < A) {
      radii.push_back(B * std::pow(t / static_cast<double>(n), 1.0 / theta_index));
    }
  }
  if (radii.empty()) {
    throw InputError("robust: no t-grid points fall inside (0, A)");
  }
  std::sort(radii.begin(), radii.end());
  const double mu = d.mean();
  const auto stat = [&d, &estimator, n, mu](rng::RngStream& stream) {
    std::vector<double> sample(static_cast<std::size_t>(n));
    for (auto& x : sample) x = d.sample(stream);
    return std::fabs(estimator(sample) - mu);
  };
  // Map a radius back to its t so the bound callable stays a function of the
  // grid point: t = n (r/B)^theta.
  const double nn = static_cast<double>(n);
  const auto bound = [B, C, theta_index, nn](double r) {
    return C * std::exp(-nn * std::pow(r / B, theta_index));
  };
  mc::SimReport rep = mc::validate_bound("subweibull_certificate", stat, radii,
                                         bound, reps, level, seed, jobs);
  rep.config = {{"dist", d.name()},   {"n", n}, {"theta", theta_index},
                {"A", A},             {"B", B}, {"C", C},
                {"reps", reps}};
  return rep;
}

}  // namespace subw::robust
