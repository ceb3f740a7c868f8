#include "subw/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "subw/constants.hpp"
#include "subw/distributions.hpp"
#include "subw/errors.hpp"
#include "subw/experiments.hpp"
#include "subw/io.hpp"
#include "subw/nbr.hpp"
#include "subw/norms.hpp"
#include "subw/randmat.hpp"
#include "subw/robust.hpp"
#include "subw/tails.hpp"

namespace subw::cli {

namespace {

using nlohmann::ordered_json;

void dump10(const ordered_json& j, std::string& out) {
  switch (j.type()) {
    case ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(it.key()).dump();
        out += ':';
        dump10(it.value(), out);
      }
      out += '}';
      break;
    }
    case ordered_json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump10(v, out);
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.10g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

double parse_real_token(const std::string& token) {
  std::string s;
  for (char c : token) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "e") return 2.718281828459045;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InputError("cannot parse number '" + token + "'");
  }
  return v;
}

void emit_error(std::ostream& err, const char* type, const std::string& message) {
  err << render_json(ordered_json{{"error", type}, {"message", message}}) << "\n";
}

ordered_json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config file '" + path + "': " + e.what());
  }
}

template <typename T>
void config_fill(const ordered_json& cfg, const CLI::App* sub, const std::string& flag,
                 const std::string& key, T& var) {
  if (sub->count(flag) == 0 && cfg.contains(key)) {
    try {
      var = cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError("config key '" + key + "': " + e.what());
    }
  }
}

// ---- norm verb dispatch ------------------------------------------------------

norms::NormValue psi_norm_for(const dist::Distribution& d, double theta) {
  using dist::Kind;
  if (d.kind == Kind::Poisson && theta == 1.0) {
    return norms::psi1_norm_poisson(d.p1, d.centered);
  }
  if (d.kind == Kind::NegBinomial && theta == 1.0) {
    if (d.centered) {
      return norms::make_psi(tails::nb_scale(d.p1, d.p2), 1.0,
                             norms::Provenance::ClosedForm);
    }
    return norms::psi1_norm_negbin(d.p1, d.p2);
  }
  if (d.kind == Kind::Gaussian && theta == 2.0) {
    return norms::make_psi(std::sqrt(8.0 / 3.0), 2.0, norms::Provenance::ClosedForm);
  }
  if (d.kind == Kind::Weibull && theta == d.p1 && !d.centered) {
    return norms::make_psi(std::pow(2.0, 1.0 / theta), theta,
                           norms::Provenance::ClosedForm);
  }
  if (d.kind == Kind::SymWeibull && theta == d.p1 && !d.centered) {
    return norms::make_psi(d.p2 * std::pow(2.0, 1.0 / theta), theta,
                           norms::Provenance::ClosedForm);
  }
  if (d.kind == Kind::Uniform || d.kind == Kind::Rademacher ||
      d.kind == Kind::Bernoulli || d.kind == Kind::PointMass) {
    double m = 1.0;
    if (d.kind == Kind::Bernoulli && d.centered) m = std::max(d.p1, 1.0 - d.p1);
    if (d.kind == Kind::PointMass) m = d.centered ? 0.0 : std::fabs(d.p1);
    if (m == 0.0) return norms::make_psi(0.0, theta, norms::Provenance::ClosedForm);
    return norms::psi_norm_bounded(m, theta);
  }
  if (d.has_abs_mgf(theta)) {
    const dist::Distribution::AbsMgf m = d.abs_mgf(theta);
    return norms::psi_norm_mgf_inversion(m.fn, theta, m.t_upper);
  }
  throw InputError("no closed form or tractable MGF for '" + d.name() +
                   "' at theta " + std::to_string(theta));
}

norms::NormValue phi_norm_for(const dist::Distribution& d, double theta) {
  using dist::Kind;
  if (d.kind == Kind::Exponential && theta == 1.0 && !d.centered) {
    return norms::make_phi(d.p1, 1.0, norms::Provenance::ClosedForm);
  }
  if ((d.kind == Kind::Gaussian || d.kind == Kind::Bernoulli ||
       d.kind == Kind::Uniform) &&
      theta == 2.0) {
    return norms::phi2_closed_form(d);
  }
  return norms::phi_norm_series(
      [&d, theta](int k) { return d.abs_moment(theta * k); }, theta);
}

// ---- per-verb option bags ----------------------------------------------------

struct NormOpts {
  std::string dist;
  std::string family;
  double theta = 1.0;
};

struct EstimateOpts {
  std::string file;
  std::string family = "phi";
  double theta = 1.0;
  int k_min = -1;
  int k_max = 50;
};

struct BoundOpts {
  std::string theorem;
  double theta = 1.0;
  std::vector<double> norms;
  std::vector<double> weights;
  std::vector<double> mus;
  std::vector<double> ks;
  std::vector<double> t_grid;
  std::string delta;
  bool csv = false;
};

struct CiOpts {
  std::string file;
  double theta = 1.0;
  std::string delta = "0.05";
  std::string method = "gbo";
};

struct RobustOpts {
  std::string file;
  double beta = 2.0;
  double epsilon = 0.05;
  double v_beta = -1.0;  // < 0: estimate from the sample
};

struct ValidateOpts {
  std::string experiment;
  long reps = 10000;
  double level = 0.99;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string config;
  bool csv = false;
};

struct BaiyinOpts {
  long n = 400;
  long p = 10;
  std::string law = "gaussian";
  double theta = 2.0;
  double K = 1.0;
  double s = 2.0;
  double c = -1.0;  // < 0: use the smallest admissible c = n log(9) / p
  long reps = 200;
  double level = 0.99;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string config;
};

struct NbrOpts {
  nbr::NbrConfig cfg;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string config;
};

// ---- verb implementations ----------------------------------------------------

void run_constants(double theta, std::ostream& out) {
  out << render_json(constants::make_bundle(theta).to_json()) << "\n";
}

void run_norm(const NormOpts& o, std::ostream& out) {
  const dist::Distribution d = dist::parse(o.dist);
  norms::NormValue nv;
  if (o.family == "psi") {
    nv = psi_norm_for(d, o.theta);
  } else if (o.family == "phi") {
    nv = phi_norm_for(d, o.theta);
  } else {
    throw InputError("family must be psi or phi");
  }
  ordered_json j = nv.to_json();
  j["dist"] = d.name();
  out << render_json(j) << "\n";
}

void run_estimate(const EstimateOpts& o, std::ostream& out) {
  const std::vector<double> values = io::read_csv_values(o.file);
  norms::NormValue nv;
  if (o.family == "phi") {
    nv = norms::estimate_phi_norm(values, o.theta, o.k_min, o.k_max);
  } else if (o.family == "psi-emgf") {
    nv = norms::estimate_psi_norm_emgf(values, o.theta);
  } else {
    throw InputError("family must be phi or psi-emgf");
  }
  ordered_json j = nv.to_json();
  j["n"] = values.size();
  out << render_json(j) << "\n";
}

void run_bound(const BoundOpts& o, std::ostream& out) {
  const auto weights_or_unit = [&o](std::size_t n) {
    return o.weights.empty() ? std::vector<double>(n, 1.0) : o.weights;
  };
  const auto parse_delta = [&o]() {
    const double delta = parse_real(o.delta);
    if (!(delta > 0.0) || !(delta < 2.0)) {
      throw InputError("delta must lie in (0, 2) so that log(2/delta) > 0");
    }
    return delta;
  };

  ordered_json j;
  j["theorem"] = o.theorem;
  std::optional<tails::TailBound> tb;

  if (o.theorem == "1b") {
    if (o.norms.empty()) throw InputError("--norms is required for theorem 1b");
    if (o.delta.empty()) throw InputError("--delta is required for theorem 1b");
    tails::WeightedFamily fam;
    fam.weights = weights_or_unit(o.norms.size());
    fam.psi_norms = o.norms;
    fam.theta = o.theta;
    const double delta = parse_delta();
    const double t = std::log(2.0 / delta);
    j["theta"] = o.theta;
    j["delta"] = delta;
    j["t"] = t;
    j["gbo_norm"] = tails::sum_gbo_norm(fam).to_json();
    j["radius"] = tails::sum_deviation(fam, t);
  } else if (o.theorem == "1c") {
    if (o.norms.empty()) throw InputError("--norms is required for theorem 1c");
    tails::WeightedFamily fam;
    fam.weights = weights_or_unit(o.norms.size());
    fam.psi_norms = o.norms;
    fam.theta = o.theta;
    tb = tails::sum_tail_two_regime(fam);
    j["crossover"] = tails::two_regime_crossover(fam);
  } else if (o.theorem == "2") {
    if (o.norms.empty()) throw InputError("--norms is required for theorem 2");
    tb = tails::phi_sum_tail(o.norms, o.theta);
  } else if (o.theorem == "nb") {
    if (o.mus.empty() || o.mus.size() != o.ks.size()) {
      throw InputError("--mus and --ks must be nonempty and equal length");
    }
    tb = tails::tail_nb_sum(weights_or_unit(o.mus.size()), o.mus, o.ks);
  } else if (o.theorem == "subexp") {
    if (o.norms.empty()) throw InputError("--norms is required for theorem subexp");
    const std::vector<double> w = weights_or_unit(o.norms.size());
    tb = tails::tail_subexp_sum(w, o.norms);
    if (!o.delta.empty()) {
      const double delta = parse_delta();
      j["delta"] = delta;
      j["radius"] = tails::subexp_deviation(w, o.norms, std::log(2.0 / delta));
    }
  } else {
    throw InputError("unknown theorem token '" + o.theorem +
                     "' (use 1b|1c|2|nb|subexp)");
  }

  if (o.csv) {
    if (!tb || o.t_grid.empty()) throw InputError("--csv requires a tail --t-grid");
    out << "t,bound\n";
    for (double t : o.t_grid) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", t, tb->eval(t));
      out << buf;
    }
    return;
  }
  if (tb) {
    j["bound"] = tb->to_json();
    if (!o.t_grid.empty()) {
      ordered_json evals = ordered_json::array();
      for (double t : o.t_grid) {
        evals.push_back(ordered_json{
            {"t", t}, {"bound", tb->eval(t)}, {"vacuous", tb->vacuous_at(t)}});
      }
      j["evaluations"] = evals;
    }
  }
  out << render_json(j) << "\n";
}

void run_ci(const CiOpts& o, std::ostream& out) {
  const std::vector<double> samples = io::read_csv_values(o.file);
  const double delta = parse_real(o.delta);
  out << render_json(
             tails::confidence_interval(samples, o.theta, delta, o.method).to_json())
      << "\n";
}

void run_robust_mean(const RobustOpts& o, std::ostream& out) {
  const std::vector<double> x = io::read_csv_values(o.file);
  if (x.size() < 2) throw InputError("need at least 2 samples");
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double v_beta = o.v_beta;
  if (v_beta < 0.0) {
    v_beta = 0.0;
    for (double v : x) v_beta += std::pow(std::fabs(v - mean), o.beta);
    v_beta /= n;
  }
  const robust::AlphaChoice ac = robust::choose_alpha(n, o.beta, o.epsilon, v_beta);
  const robust::CFunction cf = robust::power_c(o.beta);
  const double theta_hat = robust::solve_z(x, ac.alpha, cf);
  const double radius = robust::chen_bound(n, o.beta, o.epsilon, v_beta);
  ordered_json j;
  j["n"] = x.size();
  j["beta"] = o.beta;
  j["epsilon"] = o.epsilon;
  j["v_beta"] = v_beta;
  j["alpha_choice"] = ac.to_json();
  j["theta_hat"] = theta_hat;
  j["radius"] = radius;
  j["lower"] = theta_hat - radius;
  j["upper"] = theta_hat + radius;
  out << render_json(j) << "\n";
}

void run_validate(const ValidateOpts& o, std::ostream& out) {
  const mc::SimReport rep =
      mc::run_tail_experiment(o.experiment, o.reps, o.level, o.seed, o.jobs);
  if (o.csv) {
    out << "t,empirical_freq,cp_lower,cp_upper,bound,violation\n";
    for (const mc::BoundCheckPoint& p : rep.points) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%d\n", p.t,
                    p.empirical_freq, p.cp_lower, p.cp_upper, p.bound,
                    p.violation ? 1 : 0);
      out << buf;
    }
    return;
  }
  out << render_json(rep.to_json()) << "\n";
}

void run_baiyin(const BaiyinOpts& o, std::ostream& out) {
  randmat::MatrixSpec spec;
  spec.n = o.n;
  spec.p = o.p;
  spec.law = randmat::parse_row_law(o.law);
  spec.theta = o.theta;
  spec.K = o.K;
  const double c =
      o.c < 0.0 ? static_cast<double>(o.n) * std::log(9.0) / static_cast<double>(o.p)
                : o.c;
  const mc::SimReport rep =
      randmat::bai_yin_experiment(spec, o.s, c, o.reps, o.level, o.seed, o.jobs);
  out << render_json(rep.to_json()) << "\n";
}

void run_nbr(const NbrOpts& o, std::ostream& out) {
  out << render_json(nbr::nbr_experiment(o.cfg, o.seed, o.jobs).to_json()) << "\n";
}

}  // namespace

std::string render_json(const ordered_json& j) {
  std::string out;
  dump10(j, out);
  return out;
}

double parse_real(const std::string& text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) return parse_real_token(text);
  const double num = parse_real_token(text.substr(0, slash));
  const double den = parse_real_token(text.substr(slash + 1));
  if (den == 0.0) throw InputError("division by zero in '" + text + "'");
  return num / den;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"subw: explicit-constant concentration toolkit"};
  app.require_subcommand(1);

  // constants
  auto theta_bundle = std::make_shared<double>(1.0);
  CLI::App* c_sub = app.add_subcommand("constants", "Envelope constants for theta");
  c_sub->add_option("--theta", *theta_bundle, "tail index")->required();
  c_sub->callback([theta_bundle, &out]() { run_constants(*theta_bundle, out); });

  // norm
  auto norm_opts = std::make_shared<NormOpts>();
  CLI::App* n_sub =
      app.add_subcommand("norm", "Closed-form or MGF-inverted norm of a standard law");
  n_sub->add_option("--dist", norm_opts->dist,
                    "law, e.g. exponential:1, centered:poisson:1")
      ->required();
  n_sub->add_option("--family", norm_opts->family, "psi or phi")->required();
  n_sub->add_option("--theta", norm_opts->theta, "tail index")->required();
  n_sub->callback([norm_opts, &out]() { run_norm(*norm_opts, out); });

  // estimate
  auto est_opts = std::make_shared<EstimateOpts>();
  CLI::App* e_sub = app.add_subcommand("estimate", "Data-driven norm estimators");
  e_sub->add_option("--file", est_opts->file, "CSV of sample values")->required();
  e_sub->add_option("--theta", est_opts->theta, "tail index")->required();
  e_sub->add_option("--family", est_opts->family, "phi or psi-emgf");
  e_sub->add_option("--k-min", est_opts->k_min, "lowest moment order (phi)");
  e_sub->add_option("--k-max", est_opts->k_max, "highest moment order (phi)");
  e_sub->callback([est_opts, &out]() { run_estimate(*est_opts, out); });

  // bound
  auto bound_opts = std::make_shared<BoundOpts>();
  CLI::App* b_sub =
      app.add_subcommand("bound", "Tail curves and deviation radii on a t grid");
  b_sub->add_option("--theorem", bound_opts->theorem, "1b|1c|2|nb|subexp")
      ->required();
  b_sub->add_option("--theta", bound_opts->theta, "tail index");
  b_sub->add_option("--norms", bound_opts->norms, "per-variable norms")
      ->delimiter(',');
  b_sub->add_option("--weights", bound_opts->weights, "weights (default: unit)")
      ->delimiter(',');
  b_sub->add_option("--mus", bound_opts->mus, "NB means")->delimiter(',');
  b_sub->add_option("--ks", bound_opts->ks, "NB dispersions")->delimiter(',');
  b_sub->add_option("--t-grid", bound_opts->t_grid, "evaluation grid")
      ->delimiter(',');
  b_sub->add_option("--delta", bound_opts->delta,
                    "confidence level for radius forms (accepts e.g. 2/e)");
  b_sub->add_flag("--csv", bound_opts->csv, "emit t,bound rows");
  b_sub->callback([bound_opts, &out]() { run_bound(*bound_opts, out); });

  // ci
  auto ci_opts = std::make_shared<CiOpts>();
  CLI::App* ci_sub =
      app.add_subcommand("ci", "Data-driven confidence interval for a mean");
  ci_sub->add_option("--file", ci_opts->file, "CSV of sample values")->required();
  ci_sub->add_option("--theta", ci_opts->theta, "tail index")->required();
  ci_sub->add_option("--delta", ci_opts->delta, "level (accepts e.g. 1/20)");
  ci_sub->add_option("--method", ci_opts->method, "gbo or phi");
  ci_sub->callback([ci_opts, &out]() { run_ci(*ci_opts, out); });

  // robust-mean
  auto rob_opts = std::make_shared<RobustOpts>();
  CLI::App* r_sub =
      app.add_subcommand("robust-mean", "Damped robust mean with deviation radius");
  r_sub->add_option("--file", rob_opts->file, "CSV of sample values")->required();
  r_sub->add_option("--beta", rob_opts->beta, "moment order in (1,2]")->required();
  r_sub->add_option("--epsilon", rob_opts->epsilon, "confidence parameter")
      ->required();
  r_sub->add_option("--v-beta", rob_opts->v_beta,
                    "central beta-moment (default: estimated from the sample)");
  r_sub->callback([rob_opts, &out]() { run_robust_mean(*rob_opts, out); });

  // validate
  auto val_opts = std::make_shared<ValidateOpts>();
  CLI::App* v_sub = app.add_subcommand(
      "validate", "Monte Carlo tail-domination experiments (canned designs)");
  v_sub->add_option("--experiment", val_opts->experiment,
                    "psi_tail_weibull|phi_tail_exponential|subexp_sum_exponential|"
                    "nb_sum|gbo_sum_coverage|phi_mean_coverage");
  v_sub->add_option("--reps", val_opts->reps, "replicates");
  v_sub->add_option("--level", val_opts->level, "Clopper-Pearson level");
  v_sub->add_option("--seed", val_opts->seed, "RNG seed");
  v_sub->add_option("--jobs", val_opts->jobs, "worker threads");
  v_sub->add_option("--config", val_opts->config,
                    "JSON config {experiment, reps, level, seed}");
  v_sub->add_flag("--csv", val_opts->csv, "emit per-point rows");
  v_sub->callback([val_opts, v_sub, &out]() {
    if (!val_opts->config.empty()) {
      const ordered_json cfg = load_config(val_opts->config);
      config_fill(cfg, v_sub, "--experiment", "experiment", val_opts->experiment);
      config_fill(cfg, v_sub, "--reps", "reps", val_opts->reps);
      config_fill(cfg, v_sub, "--level", "level", val_opts->level);
      config_fill(cfg, v_sub, "--seed", "seed", val_opts->seed);
    }
    if (val_opts->experiment.empty()) {
      throw InputError("--experiment (or a config with one) is required");
    }
    run_validate(*val_opts, out);
  });

  // baiyin
  auto by_opts = std::make_shared<BaiyinOpts>();
  CLI::App* by_sub = app.add_subcommand(
      "baiyin", "Extreme-singular-value interval experiment for isotropic rows");
  by_sub->add_option("--n", by_opts->n, "rows");
  by_sub->add_option("--p", by_opts->p, "columns");
  by_sub->add_option("--law", by_opts->law,
                     "gaussian|rademacher|symmetrized_weibull");
  by_sub->add_option("--theta", by_opts->theta, "row norm tail index");
  by_sub->add_option("--K", by_opts->K, "row norm bound");
  by_sub->add_option("--s", by_opts->s, "confidence scale (level 1 - 2 e^{-s^2})");
  by_sub->add_option("--c", by_opts->c, "t = c p + s^2 (default n log9 / p)");
  by_sub->add_option("--reps", by_opts->reps, "replicates");
  by_sub->add_option("--level", by_opts->level, "Clopper-Pearson level");
  by_sub->add_option("--seed", by_opts->seed, "RNG seed");
  by_sub->add_option("--jobs", by_opts->jobs, "worker threads");
  by_sub->add_option("--config", by_opts->config, "JSON config");
  by_sub->callback([by_opts, by_sub, &out]() {
    if (!by_opts->config.empty()) {
      const ordered_json cfg = load_config(by_opts->config);
      config_fill(cfg, by_sub, "--n", "n", by_opts->n);
      config_fill(cfg, by_sub, "--p", "p", by_opts->p);
      config_fill(cfg, by_sub, "--law", "law", by_opts->law);
      config_fill(cfg, by_sub, "--theta", "theta", by_opts->theta);
      config_fill(cfg, by_sub, "--K", "K", by_opts->K);
      config_fill(cfg, by_sub, "--s", "s", by_opts->s);
      config_fill(cfg, by_sub, "--c", "c", by_opts->c);
      config_fill(cfg, by_sub, "--reps", "reps", by_opts->reps);
      config_fill(cfg, by_sub, "--level", "level", by_opts->level);
      config_fill(cfg, by_sub, "--seed", "seed", by_opts->seed);
    }
    run_baiyin(*by_opts, out);
  });

  // nbr-sim
  auto nbr_opts = std::make_shared<NbrOpts>();
  CLI::App* nb_sub = app.add_subcommand(
      "nbr-sim", "Negative-binomial regression sandwich experiment");
  nb_sub->add_option("--n", nbr_opts->cfg.n, "observations per replicate");
  nb_sub->add_option("--p", nbr_opts->cfg.p, "coefficients");
  nb_sub->add_option("--k", nbr_opts->cfg.k, "dispersion");
  nb_sub->add_option("--beta-star", nbr_opts->cfg.beta_star, "true coefficients")
      ->delimiter(',');
  nb_sub->add_option("--reps", nbr_opts->cfg.reps, "replicates");
  nb_sub->add_option("--delta", nbr_opts->cfg.delta, "bound confidence parameter");
  nb_sub->add_option("--c-min", nbr_opts->cfg.c_min, "Hessian eigenvalue floor");
  nb_sub->add_option("--seed", nbr_opts->seed, "RNG seed");
  nb_sub->add_option("--jobs", nbr_opts->jobs, "worker threads");
  nb_sub->add_option("--config", nbr_opts->config, "JSON config");
  nb_sub->callback([nbr_opts, nb_sub, &out]() {
    if (!nbr_opts->config.empty()) {
      const ordered_json cfg = load_config(nbr_opts->config);
      config_fill(cfg, nb_sub, "--n", "n", nbr_opts->cfg.n);
      config_fill(cfg, nb_sub, "--p", "p", nbr_opts->cfg.p);
      config_fill(cfg, nb_sub, "--k", "k", nbr_opts->cfg.k);
      config_fill(cfg, nb_sub, "--beta-star", "beta_star", nbr_opts->cfg.beta_star);
      config_fill(cfg, nb_sub, "--reps", "reps", nbr_opts->cfg.reps);
      config_fill(cfg, nb_sub, "--delta", "delta", nbr_opts->cfg.delta);
      config_fill(cfg, nb_sub, "--c-min", "c_min", nbr_opts->cfg.c_min);
      config_fill(cfg, nb_sub, "--seed", "seed", nbr_opts->seed);
    }
    run_nbr(*nbr_opts, out);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      const std::vector<CLI::App*> subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.front()->help());
      return 0;
    }
    emit_error(err, "input", e.what());
    return 2;
  } catch (const InputError& e) {
    emit_error(err, "input", e.what());
    return 2;
  } catch (const NumericError& e) {
    emit_error(err, "numeric", e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 3;
  }
}

}  // namespace subw::cli
