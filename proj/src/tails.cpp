#include "subw/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "subw/constants.hpp"
#include "subw/errors.hpp"
#include "subw/linalg.hpp"
#include "subw/optimize.hpp"

namespace subw::tails {

namespace {

constexpr double kE = 2.718281828459045;
constexpr double kLog2 = 0.6931471805599453;
// exp(11/12), the slack factor absorbed by the moment-growth constant
const double kE1112 = std::exp(11.0 / 12.0);

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InputError(std::string("tails: ") + what + " must be positive and finite");
  }
}

// Shared scales of the centered sub-exponential sum bound:
// s2 = sum w_i^2 v_i^2 and m = max_i |w_i| v_i.
struct SubexpScales {
  double s2 = 0.0;
  double m = 0.0;
};

SubexpScales subexp_scales(const std::vector<double>& weights,
                           const std::vector<double>& norms) {
  if (weights.empty() || weights.size() != norms.size()) {
    throw InputError("tails: weights and norms must be non-empty and equal-sized");
  }
  SubexpScales sc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || !(norms[i] >= 0.0) || !std::isfinite(norms[i])) {
      throw InputError("tails: weights must be finite and norms non-negative");
    }
    const double wv = std::fabs(weights[i]) * norms[i];
    sc.s2 += wv * wv;
    sc.m = std::max(sc.m, wv);
  }
  if (sc.m == 0.0) throw InputError("tails: degenerate family (all w_i v_i are zero)");
  return sc;
}

TailBound subexp_curve(std::string kind, const SubexpScales& sc,
                       nlohmann::ordered_json extra) {
  TailBound tb;
  tb.kind = std::move(kind);
  tb.constants = std::move(extra);
  tb.constants["quadratic_scale"] = 2.0 * sc.s2;
  tb.constants["linear_scale"] = sc.m;
  const double s2 = sc.s2;
  const double m = sc.m;
  tb.raw = [s2, m](double t) {
    if (t <= 0.0) return 2.0;
    const double quad = t * t / (2.0 * s2);
    const double lin = t / m;
    return 2.0 * std::exp(-0.25 * std::min(quad, lin));
  };
  return tb;
}

// Scales of the generalized Bernstein-Orlicz sum bounds.
struct GboScales {
  double b2 = 0.0;      // ||b||_2
  double big_c = 0.0;   // C(theta)
  double l = 0.0;       // L_n(theta, b)
  double gamma = 0.0;
};

GboScales gbo_scales(const WeightedFamily& fam) {
  fam.validate();
  const std::vector<double> b = fam.b();
  GboScales sc;
  sc.b2 = linalg::l2_norm(b);
  sc.big_c = constants::big_c(fam.theta);
  sc.l = constants::l_n(fam.theta, b);
  sc.gamma = constants::gamma_minimal();
  return sc;
}

}  // namespace

void WeightedFamily::validate() const {
  if (weights.empty() || weights.size() != psi_norms.size()) {
    throw InputError("tails: weights and psi_norms must be non-empty and equal-sized");
  }
  check_positive(theta, "theta");
  bool any = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || !(psi_norms[i] >= 0.0) ||
        !std::isfinite(psi_norms[i])) {
      throw InputError("tails: weights must be finite and psi_norms non-negative");
    }
    any = any || (weights[i] != 0.0 && psi_norms[i] != 0.0);
  }
  if (!any) throw InputError("tails: degenerate family (all w_i v_i are zero)");
}

std::vector<double> WeightedFamily::b() const {
  std::vector<double> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = weights[i] * psi_norms[i];
  return out;
}

double TailBound::eval(double t) const {
  if (t < valid_from) return 1.0;
  const double v = raw(t);
  return std::clamp(v, 0.0, 1.0);
}

nlohmann::ordered_json TailBound::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["constants"] = constants;
  j["valid_from"] = valid_from;
  return j;
}

TailBound tail_single_psi(double psi_norm, double theta) {
  check_positive(psi_norm, "psi norm");
  check_positive(theta, "theta");
  TailBound tb;
  tb.kind = "psi_tail";
  tb.constants = {{"theta", theta}, {"psi_norm", psi_norm}};
  tb.raw = [psi_norm, theta](double t) {
    if (t <= 0.0) return 2.0;
    return 2.0 * std::exp(-std::pow(t / psi_norm, theta));
  };
  return tb;
}

TailBound tail_single_phi(double phi_norm, double theta) {
  check_positive(phi_norm, "phi norm");
  check_positive(theta, "theta");
  TailBound tb;
  tb.kind = "phi_tail";
  tb.constants = {{"theta", theta}, {"phi_norm", phi_norm}};
  tb.raw = [phi_norm, theta](double t) {
    if (t <= 0.0) return 2.0;
    return 2.0 * std::exp(-0.5 * std::pow(t / phi_norm, theta));
  };
  return tb;
}

TailBound tail_subexp_sum(const std::vector<double>& weights,
                          const std::vector<double>& psi1_norms) {
  const SubexpScales sc = subexp_scales(weights, psi1_norms);
  return subexp_curve("subexp_sum_tail", sc,
                      {{"n", static_cast<long>(weights.size())}});
}

double subexp_deviation(const std::vector<double>& weights,
                        const std::vector<double>& psi1_norms, double t) {
  if (!(t >= 0.0)) throw InputError("tails: confidence parameter t must be >= 0");
  const SubexpScales sc = subexp_scales(weights, psi1_norms);
  return 2.0 * std::sqrt(2.0 * t * sc.s2) + 2.0 * t * sc.m;
}

double nb_scale(double mu, double k) {
  return norms::psi1_norm_negbin(mu, k).value + mu / kLog2;
}

TailBound tail_nb_sum(const std::vector<double>& weights,
                      const std::vector<double>& mus,
                      const std::vector<double>& ks) {
  if (mus.size() != ks.size() || mus.size() != weights.size()) {
    throw InputError("tails: weights, mus, ks must be equal-sized");
  }
  std::vector<double> scales(mus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) scales[i] = nb_scale(mus[i], ks[i]);
  const SubexpScales sc = subexp_scales(weights, scales);
  return subexp_curve("nb_sum_tail", sc,
                      {{"n", static_cast<long>(weights.size())}});
}

norms::NormValue sum_gbo_norm(const WeightedFamily& fam) {
  const GboScales sc = gbo_scales(fam);
  return norms::make_gbo(sc.gamma * kE * sc.big_c * sc.b2, fam.theta, sc.l);
}

double sum_deviation(const WeightedFamily& fam, double t) {
  if (!(t >= 0.0)) throw InputError("tails: confidence parameter t must be >= 0");
  const GboScales sc = gbo_scales(fam);
  const double scale = 2.0 * kE * sc.big_c * sc.b2;
  return scale * (std::sqrt(t) + sc.l * std::pow(t, 1.0 / fam.theta));
}

double sum_tail_inverted(const WeightedFamily& fam, double s) {
  const GboScales sc = gbo_scales(fam);
  const norms::NormValue g =
      norms::make_gbo(2.0 * kE * sc.big_c * sc.b2, fam.theta, sc.l);
  return gbo_tail(g, s);
}

TailBound sum_tail_two_regime(const WeightedFamily& fam) {
  const GboScales sc = gbo_scales(fam);
  const double gauss_scale = 4.0 * kE * sc.big_c * sc.b2;
  const double poly_scale = gauss_scale * sc.l;
  TailBound tb;
  tb.kind = "gbo_sum_two_regime_tail";
  tb.constants = {{"theta", fam.theta},
                  {"gauss_scale", gauss_scale},
                  {"poly_scale", poly_scale},
                  {"gbo_L", sc.l}};
  const double theta = fam.theta;
  tb.raw = [gauss_scale, poly_scale, theta](double s) {
    if (s <= 0.0) return 2.0;
    const double gauss = (s / gauss_scale) * (s / gauss_scale);
    const double poly = std::pow(s / poly_scale, theta);
    return 2.0 * std::exp(-std::min(gauss, poly));
  };
  return tb;
}

double two_regime_crossover(const WeightedFamily& fam) {
  if (fam.theta == 2.0) {
    throw InputError(
        "tails: two-regime crossover is undefined at theta == 2 (the branches "
        "coincide only when L == 1)");
  }
  const GboScales sc = gbo_scales(fam);
  return 4.0 * kE * sc.big_c * sc.b2 *
         std::pow(sc.l, fam.theta / (fam.theta - 2.0));
}

double gbo_deviation(const norms::NormValue& g, double t) {
  if (g.family != norms::Family::Gbo || !g.gbo_L) {
    throw InputError("tails: gbo_deviation expects a gbo-family norm");
  }
  if (!(t >= 0.0)) throw InputError("tails: confidence parameter t must be >= 0");
  const double l = *g.gbo_L;
  return g.value * (std::sqrt(t) + l * std::pow(t, 1.0 / g.theta));
}

double gbo_tail(const norms::NormValue& g, double s) {
  if (g.family != norms::Family::Gbo || !g.gbo_L) {
    throw InputError("tails: gbo_tail expects a gbo-family norm");
  }
  if (s <= 0.0) return 2.0;
  check_positive(g.value, "gbo norm value");
  const double l = *g.gbo_L;
  const double theta = g.theta;
  const double target = s / g.value;
  const auto radius_at = [l, theta](double t) {
    return std::sqrt(t) + l * std::pow(t, 1.0 / theta);
  };
  const double t = opt::invert_increasing(radius_at, target);
  return 2.0 * std::exp(-t);
}

TailBound phi_sum_tail(const std::vector<double>& phi_norms, double theta) {
  check_positive(theta, "theta");
  if (phi_norms.empty()) throw InputError("tails: empty norm list");
  double v_sum = 0.0;
  for (double v : phi_norms) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("tails: phi norms must be positive and finite");
    }
    v_sum += v;
  }
  const double c_theta = constants::c_theta_moment_const(theta);
  const double scale = kE * v_sum * c_theta;
  TailBound tb;
  tb.kind = "phi_sum_tail";
  tb.valid_from = scale * std::pow(2.0 / (theta * kE1112), 1.0 / theta);
  tb.constants = {{"theta", theta},
                  {"norm_sum", v_sum},
                  {"moment_const", c_theta},
                  {"scale", scale},
                  {"valid_from", tb.valid_from}};
  tb.raw = [scale, theta](double t) {
    if (t <= 0.0) return 1.0;
    return std::exp(-0.5 * theta * kE1112 * std::pow(t / scale, theta));
  };
  return tb;
}

double phi_sum_ci_radius(const std::vector<double>& phi_norms, double theta,
                         double alpha) {
  check_positive(theta, "theta");
  if (!(alpha > 0.0) || !(alpha < 1.0 / kE)) {
    throw InputError("tails: alpha must lie in (0, 1/e)");
  }
  if (phi_norms.empty()) throw InputError("tails: empty norm list");
  double v_sum = 0.0;
  for (double v : phi_norms) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("tails: phi norms must be positive and finite");
    }
    v_sum += v;
  }
  const double vbar = v_sum / static_cast<double>(phi_norms.size());
  const double c_theta = constants::c_theta_moment_const(theta);
  return kE * vbar * std::pow(2.0, 1.0 / theta) * c_theta *
         std::pow(std::log(1.0 / alpha) / (theta * kE1112), 1.0 / theta);
}

double phi_sum_mixed_radius(const std::vector<double>& abs_means,
                            const std::vector<double>& phi_norms, double theta,
                            double t) {
  check_positive(theta, "theta");
  check_positive(t, "confidence parameter t");
  if (abs_means.empty() || abs_means.size() != phi_norms.size()) {
    throw InputError("tails: abs_means and phi_norms must be non-empty and equal-sized");
  }
  double v_sum = 0.0;
  for (double v : phi_norms) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("tails: phi norms must be positive and finite");
    }
    v_sum += v;
  }
  // (sum_i a_i^t)^{1/t} in log space; zero means are skipped.
  double lmax = -std::numeric_limits<double>::infinity();
  for (double a : abs_means) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw InputError("tails: absolute means must be non-negative and finite");
    }
    if (a > 0.0) lmax = std::max(lmax, t * std::log(a));
  }
  double mean_term = 0.0;
  if (std::isfinite(lmax)) {
    double s = 0.0;
    for (double a : abs_means) {
      if (a > 0.0) s += std::exp(t * std::log(a) - lmax);
    }
    mean_term = std::exp((lmax + std::log(s)) / t);
  }
  const double c_theta = constants::c_theta_moment_const(theta);
  const double fluct = kE * v_sum * std::pow(2.0, 1.0 / theta) * c_theta *
                       std::pow(t / (theta * kE1112), 1.0 / theta);
  return kE * mean_term + fluct;
}

nlohmann::ordered_json CiResult::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["theta"] = theta;
  j["delta"] = delta;
  j["n"] = static_cast<long>(n);
  j["center"] = center;
  j["radius"] = radius;
  j["lower"] = lower;
  j["upper"] = upper;
  j["norm_estimate"] = norm_estimate.to_json();
  return j;
}

CiResult confidence_interval(const std::vector<double>& samples, double theta,
                             double delta, const std::string& method) {
  check_positive(theta, "theta");
  if (samples.size() < 2) {
    throw InputError("tails: confidence interval needs at least two samples");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw InputError("tails: delta must lie in (0, 1)");
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  std::vector<double> centered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) centered[i] = samples[i] - mean;

  CiResult res;
  res.method = method;
  res.theta = theta;
  res.delta = delta;
  res.n = samples.size();
  res.center = mean;
  if (method == "gbo") {
    res.norm_estimate = norms::estimate_psi_norm_emgf(centered, theta);
    WeightedFamily fam;
    fam.weights.assign(samples.size(), 1.0 / n);
    fam.psi_norms.assign(samples.size(), res.norm_estimate.value);
    fam.theta = theta;
    res.radius = sum_deviation(fam, std::log(2.0 / delta));
  } else if (method == "phi") {
    res.norm_estimate = norms::estimate_phi_norm(centered, theta);
    if (!(res.norm_estimate.value > 0.0)) {
      throw NumericError("tails: estimated phi norm is zero (degenerate sample)");
    }
    const std::vector<double> vs(samples.size(), res.norm_estimate.value);
    res.radius = phi_sum_ci_radius(vs, theta, delta);
  } else {
    throw InputError("tails: unknown confidence-interval method (use gbo|phi)");
  }
  res.lower = res.center - res.radius;
  res.upper = res.center + res.radius;
  return res;
}

double best_bound(const std::vector<TailBound>& bounds, double t) {
  if (bounds.empty()) throw InputError("tails: best_bound needs at least one curve");
  double best = 1.0;
  for (const TailBound& b : bounds) best = std::min(best, b.eval(t));
  return best;
}

nlohmann::ordered_json reference_ci_comparison() {
  const double theta = 0.5;
  const std::size_t n = 10;
  const double delta = 0.05;
  const double t = std::log(2.0 / delta);

  WeightedFamily sum_fam;
  sum_fam.weights.assign(n, 1.0);
  sum_fam.psi_norms.assign(n, 1.0);
  sum_fam.theta = theta;

  WeightedFamily mean_fam = sum_fam;
  mean_fam.weights.assign(n, 1.0 / static_cast<double>(n));

  nlohmann::ordered_json j;
  j["theta"] = theta;
  j["n"] = static_cast<long>(n);
  j["delta"] = delta;
  j["confidence_t"] = t;
  j["computed"] = {{"sum_weights_radius", sum_deviation(sum_fam, t)},
                   {"mean_weights_radius", sum_deviation(mean_fam, t)}};
  j["reference"] = {{"radius_a", reference::kCiRadiusA},
                    {"radius_b", reference::kCiRadiusB}};
  j["note"] =
      "report-only: neither weight convention reproduces the quoted pair; the "
      "upstream envelope constants already differ (see the constants "
      "reference comparison)";
  return j;
}

}  // namespace subw::tails
