#include "subw/experiments.hpp"

#include <cmath>
#include <functional>

#include "subw/distributions.hpp"
#include "subw/errors.hpp"
#include "subw/norms.hpp"
#include "subw/tails.hpp"

namespace subw::mc {

namespace {

SimReport psi_tail_weibull(long reps, double level, std::uint64_t seed, int jobs) {
  const double theta = 0.5;
  const double v = std::pow(2.0, 1.0 / theta);  // psi_theta norm of Weibull(theta)
  const dist::Distribution d = dist::weibull(theta);
  const tails::TailBound tb = tails::tail_single_psi(v, theta);
  const Statistic stat = [d](rng::RngStream& s) { return d.sample(s); };
  SimReport rep = validate_bound("psi_tail_weibull", stat, {4.0, 8.0, 16.0},
                                 [&tb](double t) { return tb.eval(t); }, reps,
                                 level, seed, jobs);
  rep.config = {{"dist", d.name()}, {"theta", theta}, {"psi_norm", v}};
  return rep;
}

SimReport phi_tail_exponential(long reps, double level, std::uint64_t seed,
                               int jobs) {
  const double v = 1.0;  // phi_1 norm of Exp(1): sup_k (E X^k / k!)^{1/k} = 1
  const dist::Distribution d = dist::exponential(1.0);
  const tails::TailBound tb = tails::tail_single_phi(v, 1.0);
  const Statistic stat = [d](rng::RngStream& s) { return d.sample(s); };
  SimReport rep = validate_bound("phi_tail_exponential", stat, {2.0, 4.0, 8.0},
                                 [&tb](double t) { return tb.eval(t); }, reps,
                                 level, seed, jobs);
  rep.config = {{"dist", d.name()}, {"theta", 1.0}, {"phi_norm", v}};
  return rep;
}

SimReport subexp_sum_exponential(long reps, double level, std::uint64_t seed,
                                 int jobs) {
  const std::size_t n = 50;
  const dist::Distribution d = dist::centered(dist::exponential(1.0));
  const dist::Distribution::AbsMgf mgf = d.abs_mgf(1.0);
  const double v = norms::psi_norm_mgf_inversion(mgf.fn, 1.0, mgf.t_upper).value;
  const std::vector<double> w(n, 1.0);
  const std::vector<double> vs(n, v);
  const tails::TailBound tb = tails::tail_subexp_sum(w, vs);
  const Statistic stat = [d, n](rng::RngStream& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += d.sample(s);
    return std::fabs(acc);
  };
  SimReport rep = validate_bound("subexp_sum_exponential", stat,
                                 {30.0, 45.0, 60.0},
                                 [&tb](double t) { return tb.eval(t); }, reps,
                                 level, seed, jobs);
  rep.config = {{"dist", d.name()}, {"n", n}, {"weights", "unit"}, {"psi1_norm", v}};
  return rep;
}

SimReport nb_sum(long reps, double level, std::uint64_t seed, int jobs) {
  const std::size_t n = 100;
  const double mu = 1.0;
  const double k = 1.0;
  const dist::Distribution d = dist::neg_binomial(mu, k);
  const std::vector<double> w(n, 1.0 / static_cast<double>(n));
  const tails::TailBound tb =
      tails::tail_nb_sum(w, std::vector<double>(n, mu), std::vector<double>(n, k));
  const Statistic stat = [d, n, mu](rng::RngStream& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += d.sample(s) - mu;
    return std::fabs(acc / static_cast<double>(n));
  };
  SimReport rep = validate_bound("nb_sum", stat, {1.0, 1.5, 2.0},
                                 [&tb](double t) { return tb.eval(t); }, reps,
                                 level, seed, jobs);
  rep.config = {{"dist", d.name()},
                {"n", n},
                {"weights", "1/n"},
                {"nb_scale", tails::nb_scale(mu, k)}};
  return rep;
}

SimReport gbo_sum_coverage(long reps, double level, std::uint64_t seed, int jobs) {
  const std::size_t n = 50;
  const double theta = 0.5;
  const double delta = 0.05;
  // Scale the symmetrized Weibull to unit second moment; its psi_theta norm
  // scales along: ||c X|| = c 2^{1/theta}.
  const double scale = 1.0 / std::sqrt(std::tgamma(2.0 / theta + 1.0));
  const double v = scale * std::pow(2.0, 1.0 / theta);
  const dist::Distribution d = dist::sym_weibull(theta, scale);
  tails::WeightedFamily fam;
  fam.weights.assign(n, 1.0 / static_cast<double>(n));
  fam.psi_norms.assign(n, v);
  fam.theta = theta;
  const double t = std::log(2.0 / delta);
  const double radius = tails::sum_deviation(fam, t);
  const Statistic stat = [d, n](rng::RngStream& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += d.sample(s);
    return std::fabs(acc / static_cast<double>(n));
  };
  SimReport rep = validate_bound("gbo_sum_coverage", stat, {radius},
                                 [delta](double) { return delta; }, reps, level,
                                 seed, jobs);
  rep.config = {{"dist", d.name()}, {"n", n},       {"weights", "1/n"},
                {"psi_norm", v},    {"delta", delta}, {"radius", radius}};
  return rep;
}

SimReport phi_mean_coverage(long reps, double level, std::uint64_t seed, int jobs) {
  const std::size_t n = 100;
  const double alpha = 0.05;
  const dist::Distribution d = dist::centered(dist::exponential(1.0));
  const std::function<double(int)> moment = [d](int k) {
    return d.abs_moment(static_cast<double>(k));
  };
  const double v = norms::phi_norm_series(moment, 1.0).value;
  const double radius =
      tails::phi_sum_ci_radius(std::vector<double>(n, v), 1.0, alpha);
  const Statistic stat = [d, n](rng::RngStream& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += d.sample(s);
    return std::fabs(acc / static_cast<double>(n));
  };
  SimReport rep = validate_bound("phi_mean_coverage", stat, {radius},
                                 [alpha](double) { return alpha; }, reps, level,
                                 seed, jobs);
  rep.config = {{"dist", d.name()}, {"n", n},         {"phi_norm", v},
                {"alpha", alpha},   {"radius", radius}};
  return rep;
}

}  // namespace

std::vector<std::string> tail_experiment_names() {
  return {"psi_tail_weibull",   "phi_tail_exponential", "subexp_sum_exponential",
          "nb_sum",             "gbo_sum_coverage",     "phi_mean_coverage"};
}

SimReport run_tail_experiment(const std::string& name, long reps, double level,
                              std::uint64_t seed, int jobs) {
  if (name == "psi_tail_weibull") return psi_tail_weibull(reps, level, seed, jobs);
  if (name == "phi_tail_exponential") {
    return phi_tail_exponential(reps, level, seed, jobs);
  }
  if (name == "subexp_sum_exponential") {
    return subexp_sum_exponential(reps, level, seed, jobs);
  }
  if (name == "nb_sum") return nb_sum(reps, level, seed, jobs);
  if (name == "gbo_sum_coverage") return gbo_sum_coverage(reps, level, seed, jobs);
  if (name == "phi_mean_coverage") return phi_mean_coverage(reps, level, seed, jobs);
  std::string names;
  for (const std::string& v : tail_experiment_names()) {
    names += names.empty() ? v : ", " + v;
  }
  throw InputError("unknown experiment '" + name + "' (expected one of: " + names +
                   ")");
}

}  // namespace subw::mc
