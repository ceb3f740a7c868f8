#include "subw/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "subw/errors.hpp"
#include "subw/special.hpp"

namespace subw::mc {

Interval clopper_pearson(long successes, long trials, double level) {
  if (trials <= 0) throw InputError("clopper_pearson: trials must be positive");
  if (successes < 0 || successes > trials) {
    throw InputError("clopper_pearson: successes out of range");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw InputError("clopper_pearson: level must lie in (0,1)");
  }
  const double alpha = 1.0 - level;
  Interval iv;
  const double s = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  iv.lower = (successes == 0)
                 ? 0.0
                 : subw::special::incomplete_beta_inv(s, n - s + 1.0, alpha / 2.0);
  iv.upper = (successes == trials)
                 ? 1.0
                 : subw::special::incomplete_beta_inv(s + 1.0, n - s, 1.0 - alpha / 2.0);
  return iv;
}

nlohmann::ordered_json SimReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["config"] = config;
  j["seed"] = seed;
  j["reps"] = reps;
  j["level"] = level;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json q;
    q["t"] = p.t;
    q["empirical_freq"] = p.empirical_freq;
    q["cp_lower"] = p.cp_lower;
    q["cp_upper"] = p.cp_upper;
    q["bound"] = p.bound;
    q["violation"] = p.violation;
    pts.push_back(q);
  }
  j["points"] = pts;
  j["violations"] = violations;
  j["pass"] = pass;
  return j;
}

std::vector<double> replicate(const Statistic& stat, long reps, std::uint64_t seed,
                              int jobs) {
  if (reps <= 0) throw InputError("replicate: reps must be positive");
  if (jobs < 1) throw InputError("replicate: jobs must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(reps), 0.0);
  const int workers = static_cast<int>(std::min<long>(jobs, reps));
  if (workers == 1) {
    for (long r = 0; r < reps; ++r) {
      subw::rng::RngStream stream(seed, static_cast<std::uint64_t>(r));
      out[static_cast<std::size_t>(r)] = stat(stream);
    }
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long r = w; r < reps; r += workers) {
          subw::rng::RngStream stream(seed, static_cast<std::uint64_t>(r));
          out[static_cast<std::size_t>(r)] = stat(stream);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

SimReport validate_bound(const std::string& experiment, const Statistic& stat,
                         const std::vector<double>& t_grid, const BoundFn& bound,
                         long reps, double level, std::uint64_t seed, int jobs) {
  if (t_grid.empty()) throw InputError("validate_bound: empty t grid");
  const std::vector<double> stats = replicate(stat, reps, seed, jobs);

  SimReport rep;
  rep.experiment = experiment;
  rep.seed = seed;
  rep.reps = reps;
  rep.level = level;
  for (double t : t_grid) {
    BoundCheckPoint p;
    p.t = t;
    long hits = 0;
    for (double s : stats) {
      if (s >= t) ++hits;
    }
    p.empirical_freq = static_cast<double>(hits) / static_cast<double>(reps);
    const Interval iv = clopper_pearson(hits, reps, level);
    p.cp_lower = iv.lower;
    p.cp_upper = iv.upper;
    p.bound = std::clamp(bound(t), 0.0, 1.0);
    p.violation = p.cp_lower > p.bound;
    if (p.violation) ++rep.violations;
    rep.points.push_back(p);
  }
  rep.pass = (rep.violations == 0);
  return rep;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InputError("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double ks_critical(long n, double alpha) {
  if (n <= 0) throw InputError("ks_critical: n must be positive");
  // Invert the asymptotic Kolmogorov tail at alpha, then rescale by sqrt(n).
  double lo = 0.1, hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (subw::special::kolmogorov_tail(mid) > alpha) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

}  // namespace subw::mc
