#include "subw/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subw/constants.hpp"
#include "subw/errors.hpp"
#include "subw/optimize.hpp"
#include "subw/special.hpp"

namespace subw::norms {

namespace {

constexpr double kLog2 = 0.6931471805599453;

using subw::special::log_factorial;
using subw::special::log_gamma;

void check_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw InputError("norms: theta must be a positive finite number");
  }
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Psi: return "psi";
    case Family::Phi: return "phi";
    case Family::Gbo: return "gbo";
  }
  return "?";
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::MgfInversion: return "mgf_inversion";
    case Provenance::Series: return "series";
    case Provenance::Estimated: return "estimated";
  }
  return "?";
}

// log of (1/n) sum_i exp(t * a_i) via a stable log-sum-exp.
double log_emp_mgf(const std::vector<double>& a, double t) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : a) m = std::max(m, t * v);
  if (!std::isfinite(m)) return 0.0;  // all terms exp(0) when t*a degenerates
  double s = 0.0;
  for (double v : a) s += std::exp(t * v - m);
  return m + std::log(s) - std::log(static_cast<double>(a.size()));
}

// Shared moment-ratio supremum over integer k; `log_moment(k)` must return
// log E|X|^{theta k} (exact or empirical).
NormValue moment_ratio_sup(const std::function<double(int)>& log_moment, double theta,
                           int k_min, int k_max, Provenance prov) {
  if (k_min < 1 || k_max < k_min) throw InputError("phi norm: bad k range");
  double best = -std::numeric_limits<double>::infinity();
  int best_k = k_min;
  for (int k = k_min; k <= k_max; ++k) {
    const double lm = log_moment(k);
    const double term = (lm - log_factorial(k)) / (theta * static_cast<double>(k));
    if (term > best) {
      best = term;
      best_k = k;
    }
  }
  NormValue nv;
  nv.value = std::isfinite(best) ? std::exp(best) : 0.0;
  nv.family = Family::Phi;
  nv.theta = theta;
  nv.provenance = prov;
  nv.argmax_k = best_k;
  nv.truncated_sup = (best_k == k_max);
  return nv;
}

}  // namespace

nlohmann::ordered_json NormValue::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["family"] = family_name(family);
  j["theta"] = theta;
  if (gbo_L) j["gbo_L"] = *gbo_L;
  j["provenance"] = provenance_name(provenance);
  if (argmax_k) j["argmax_k"] = *argmax_k;
  if (truncated_sup) j["truncated_sup"] = true;
  return j;
}

NormValue make_psi(double value, double theta, Provenance prov) {
  check_theta(theta);
  if (!(value >= 0.0)) throw InputError("norm value must be non-negative");
  NormValue nv;
  nv.value = value;
  nv.family = Family::Psi;
  nv.theta = theta;
  nv.provenance = prov;
  return nv;
}

NormValue make_phi(double value, double theta, Provenance prov) {
  NormValue nv = make_psi(value, theta, prov);
  nv.family = Family::Phi;
  return nv;
}

NormValue make_gbo(double value, double theta, double L) {
  NormValue nv = make_psi(value, theta, Provenance::ClosedForm);
  nv.family = Family::Gbo;
  if (!(L >= 0.0)) throw InputError("gbo norm: L must be non-negative");
  nv.gbo_L = L;
  return nv;
}

NormValue psi_norm_bounded(double bound, double theta) {
  check_theta(theta);
  if (!(bound >= 0.0)) throw InputError("psi_norm_bounded: bound must be non-negative");
  return make_psi(bound * std::pow(kLog2, -1.0 / theta), theta, Provenance::ClosedForm);
}

NormValue psi_norm_mgf_inversion(const std::function<double(double)>& mgf,
                                 double theta, double t_upper) {
  check_theta(theta);
  if (!(t_upper > 0.0)) throw InputError("psi_norm_mgf_inversion: t_upper must be positive");
  const double at_upper = mgf(t_upper);
  if (!std::isfinite(at_upper)) {
    throw NumericError("psi_norm_mgf_inversion: MGF blow-up at the bracket end");
  }
  if (at_upper < 2.0) {
    throw NumericError("psi_norm_mgf_inversion: norm not bracketed (MGF below 2 on bracket)");
  }
  double lo = 0.0, hi = t_upper;
  for (int it = 0; it < 300 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = mgf(mid);
    if (!std::isfinite(v)) {
      throw NumericError("psi_norm_mgf_inversion: MGF blow-up inside bracket");
    }
    if (v >= 2.0) hi = mid; else lo = mid;
  }
  const double root = 0.5 * (lo + hi);
  return make_psi(std::pow(root, -1.0 / theta), theta, Provenance::MgfInversion);
}

NormValue psi1_norm_negbin(double mu, double k) {
  if (!(mu > 0.0)) throw InputError("psi1_norm_negbin: mu must be positive");
  if (!(k > 0.0)) throw InputError("psi1_norm_negbin: k must be positive");
  const double q = mu / (k + mu);
  const double arg = (1.0 - (1.0 - q) * std::pow(2.0, -1.0 / k)) / q;
  return make_psi(1.0 / std::log(arg), 1.0, Provenance::ClosedForm);
}

NormValue psi1_norm_poisson(double lambda, bool centered) {
  if (!(lambda > 0.0)) throw InputError("psi1_norm_poisson: lambda must be positive");
  double v = 1.0 / std::log1p(kLog2 / lambda);
  if (centered) v += lambda / kLog2;
  return make_psi(v, 1.0, Provenance::ClosedForm);
}

NormValue phi_norm_series(const std::function<double(int)>& moment, double theta,
                          int k_max) {
  check_theta(theta);
  const auto log_moment = [&moment](int k) {
    const double m = moment(k);
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw NumericError("phi_norm_series: moment callable returned a bad value");
    }
    return m == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(m);
  };
  NormValue nv = moment_ratio_sup(log_moment, theta, 1, k_max, Provenance::Series);
  return nv;
}

NormValue phi2_closed_form(const subw::dist::Distribution& d,
                           const std::vector<double>& p_grid) {
  if (p_grid.empty()) throw InputError("phi2_closed_form: empty p grid");
  using subw::dist::Kind;
  std::function<double(double)> value_at_p;
  switch (d.kind) {
    case Kind::Gaussian:
      value_at_p = [](double p) {
        return std::sqrt(2.0) *
               std::exp((log_gamma((1.0 + p) / 2.0) - log_gamma(0.5) -
                         log_gamma(1.0 + p / 2.0)) / p);
      };
      break;
    case Kind::Bernoulli: {
      const double mu = d.p1;
      value_at_p = [mu](double p) {
        const double num = mu * std::pow(1.0 - mu, p) + (1.0 - mu) * std::pow(mu, p);
        return std::exp((std::log(num) - log_gamma(p / 2.0 + 1.0)) / p);
      };
      break;
    }
    case Kind::Uniform:
      value_at_p = [](double p) {
        return std::exp(-log_gamma(p / 2.0 + 1.0) / p - std::log(p + 1.0) / p);
      };
      break;
    default:
      throw InputError("phi2_closed_form: no displayed formula for " + d.name());
  }
  double best = 0.0;
  for (double p : p_grid) {
    if (!(p >= 1.0)) throw InputError("phi2_closed_form: p grid entries must be >= 1");
    best = std::max(best, value_at_p(p));
  }
  return make_phi(best, 2.0, Provenance::ClosedForm);
}

NormValue estimate_phi_norm(const std::vector<double>& samples, double theta,
                            int k_min, int k_max) {
  check_theta(theta);
  if (samples.empty()) throw InputError("estimate_phi_norm: empty sample");
  if (k_min < 0) k_min = (theta == 1.0) ? 2 : 1;
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double x : samples) {
    const double a = std::fabs(x);
    if (a > 0.0) logs.push_back(std::log(a));
  }
  const double n = static_cast<double>(samples.size());
  if (logs.empty()) {
    NormValue nv = make_phi(0.0, theta, Provenance::Estimated);
    return nv;
  }
  const auto log_moment = [&logs, n, theta](int k) {
    const double tk = theta * static_cast<double>(k);
    double m = -std::numeric_limits<double>::infinity();
    for (double lx : logs) m = std::max(m, tk * lx);
    double s = 0.0;
    for (double lx : logs) s += std::exp(tk * lx - m);
    return m + std::log(s) - std::log(n);
  };
  return moment_ratio_sup(log_moment, theta, k_min, k_max, Provenance::Estimated);
}

NormValue estimate_psi_norm_emgf(const std::vector<double>& samples, double theta) {
  check_theta(theta);
  if (samples.empty()) throw InputError("estimate_psi_norm_emgf: empty sample");
  std::vector<double> a;
  a.reserve(samples.size());
  double amax = 0.0;
  for (double x : samples) {
    const double v = std::pow(std::fabs(x), theta);
    a.push_back(v);
    amax = std::max(amax, v);
  }
  if (amax == 0.0) {
    throw NumericError("estimate_psi_norm_emgf: level 2 unreachable (all samples zero)");
  }
  const auto g = [&a](double t) { return log_emp_mgf(a, t); };
  const double root = subw::opt::invert_increasing(g, std::log(2.0), 1e-12);
  return make_psi(std::pow(root, -1.0 / theta), theta, Provenance::Estimated);
}

NormValue power_transform_norm(const NormValue& psi_norm, double r) {
  if (psi_norm.family != Family::Psi) {
    throw InputError("power_transform_norm: expects a psi-family norm");
  }
  if (!(r > 0.0)) throw InputError("power_transform_norm: power must be positive");
  NormValue nv = make_psi(std::pow(psi_norm.value, r), psi_norm.theta / r,
                          psi_norm.provenance);
  return nv;
}

NormValue product_norm_bound(const std::vector<NormValue>& factors) {
  if (factors.empty()) throw InputError("product_norm_bound: no factors");
  double inv_beta = 0.0;
  double log_value = 0.0;
  for (const NormValue& f : factors) {
    if (f.family != Family::Psi) {
      throw InputError("product_norm_bound: expects psi-family norms");
    }
    if (!(f.value > 0.0)) throw InputError("product_norm_bound: zero factor norm");
    inv_beta += 1.0 / f.theta;
    log_value += std::log(f.value);
  }
  return make_psi(std::exp(log_value), 1.0 / inv_beta, Provenance::ClosedForm);
}

NormValue centered_norm_bound(const NormValue& psi_norm) {
  if (psi_norm.family != Family::Psi) {
    throw InputError("centered_norm_bound: expects a psi-family norm");
  }
  return make_psi(subw::constants::centering_factor(psi_norm.theta) * psi_norm.value,
                  psi_norm.theta, psi_norm.provenance);
}

NormValue vector_norm_estimate(const std::vector<std::vector<double>>& rows,
                               double theta, int k_min, int k_max) {
  if (rows.empty()) throw InputError("vector_norm_estimate: no rows");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw InputError("vector_norm_estimate: zero-dimensional rows");
  std::vector<double> norms;
  norms.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != dim) {
      throw InputError("vector_norm_estimate: ragged rows");
    }
    double s = 0.0;
    for (double x : row) s += x * x;
    norms.push_back(std::sqrt(s));
  }
  return estimate_phi_norm(norms, theta, k_min, k_max);
}

}  // namespace subw::norms
