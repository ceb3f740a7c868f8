#include "subw/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "subw/errors.hpp"
#include "subw/integrate.hpp"
#include "subw/special.hpp"

namespace subw::dist {

namespace {

using subw::special::log_gamma;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Truncated series E g(x) over a Poisson(lambda) pmf; the pmf decays
// super-exponentially so the tail beyond mean + 40*sd + 80 is < 1e-18.
double poisson_series(double lambda, const std::function<double(double)>& g) {
  const int cap = static_cast<int>(lambda + 40.0 * std::sqrt(lambda) + 80.0);
  double sum = 0.0;
  for (int x = 0; x <= cap; ++x) {
    const double lp = -lambda + x * std::log(lambda) - subw::special::log_factorial(x);
    sum += g(static_cast<double>(x)) * std::exp(lp);
  }
  return sum;
}

// Truncated series over a negative binomial pmf with mean mu, shape k.
double negbin_series(double mu, double k, const std::function<double(double)>& g) {
  const double q = mu / (k + mu);
  const double sd = std::sqrt(mu * (1.0 + mu / k));
  const int soft = static_cast<int>(mu + 30.0 * sd + 60.0);
  double sum = 0.0;
  for (int y = 0;; ++y) {
    const double lp = log_gamma(y + k) - log_gamma(k) - subw::special::log_factorial(y) +
                      k * std::log1p(-q) + y * std::log(q);
    const double p = std::exp(lp);
    sum += g(static_cast<double>(y)) * p;
    if (y > soft && p < 1e-19) break;
    if (y > 100000) break;  // hard stop; unreachable under the mu <= 30 guard
  }
  return sum;
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::string Distribution::name() const {
  std::string base;
  switch (kind) {
    case Kind::Gaussian: base = "gaussian"; break;
    case Kind::Uniform: base = "uniform"; break;
    case Kind::Bernoulli: base = "bernoulli:" + num(p1); break;
    case Kind::Rademacher: base = "rademacher"; break;
    case Kind::Exponential: base = "exponential:" + num(p1); break;
    case Kind::Weibull: base = "weibull:" + num(p1); break;
    case Kind::SymWeibull: base = "symweibull:" + num(p1) + "," + num(p2); break;
    case Kind::Poisson: base = "poisson:" + num(p1); break;
    case Kind::NegBinomial: base = "negbinomial:" + num(p1) + "," + num(p2); break;
    case Kind::Pareto: base = "pareto:" + num(p1) + "," + num(p2); break;
    case Kind::PointMass: base = "pointmass:" + num(p1); break;
  }
  return centered ? "centered:" + base : base;
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::Gaussian: return 0.0;
    case Kind::Uniform: return 0.0;
    case Kind::Bernoulli: return p1;
    case Kind::Rademacher: return 0.0;
    case Kind::Exponential: return p1;
    case Kind::Weibull: return std::exp(log_gamma(1.0 / p1 + 1.0));
    case Kind::SymWeibull: return 0.0;
    case Kind::Poisson: return p1;
    case Kind::NegBinomial: return p1;
    case Kind::Pareto: {
      if (p1 <= 1.0) throw NumericError("pareto mean: undefined for alpha <= 1");
      return p1 * p2 / (p1 - 1.0);
    }
    case Kind::PointMass: return p1;
  }
  throw InputError("mean: unknown kind");
}

double Distribution::variance() const {
  switch (kind) {
    case Kind::Gaussian: return 1.0;
    case Kind::Uniform: return 1.0 / 3.0;
    case Kind::Bernoulli: return p1 * (1.0 - p1);
    case Kind::Rademacher: return 1.0;
    case Kind::Exponential: return p1 * p1;
    case Kind::Weibull: {
      const double m1 = std::exp(log_gamma(1.0 / p1 + 1.0));
      const double m2 = std::exp(log_gamma(2.0 / p1 + 1.0));
      return m2 - m1 * m1;
    }
    case Kind::SymWeibull: return p2 * p2 * std::exp(log_gamma(2.0 / p1 + 1.0));
    case Kind::Poisson: return p1;
    case Kind::NegBinomial: return p1 * (1.0 + p1 / p2);
    case Kind::Pareto: {
      if (p1 <= 2.0) throw NumericError("pareto variance: undefined for alpha <= 2");
      return p1 * p2 * p2 / ((p1 - 1.0) * (p1 - 1.0) * (p1 - 2.0));
    }
    case Kind::PointMass: return 0.0;
  }
  throw InputError("variance: unknown kind");
}

double Distribution::sample(subw::rng::RngStream& rng) const {
  double x = 0.0;
  switch (kind) {
    case Kind::Gaussian: x = rng.gaussian(); break;
    case Kind::Uniform: x = 2.0 * rng.uniform() - 1.0; break;
    case Kind::Bernoulli: x = rng.uniform() < p1 ? 1.0 : 0.0; break;
    case Kind::Rademacher: x = rng.uniform() < 0.5 ? -1.0 : 1.0; break;
    case Kind::Exponential: x = -p1 * std::log(rng.uniform_pos()); break;
    case Kind::Weibull: x = std::pow(-std::log(rng.uniform_pos()), 1.0 / p1); break;
    case Kind::SymWeibull: {
      const double w = std::pow(-std::log(rng.uniform_pos()), 1.0 / p1);
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      x = sign * p2 * w;
      break;
    }
    case Kind::Poisson: x = sample_poisson(p1, rng); break;
    case Kind::NegBinomial: {
      const double g = sample_gamma(p2, p1 / p2, rng);
      x = sample_poisson(g, rng, 100.0);
      break;
    }
    case Kind::Pareto: x = p2 * std::pow(rng.uniform_pos(), -1.0 / p1); break;
    case Kind::PointMass: x = p1; break;
  }
  return centered ? x - mean() : x;
}

double Distribution::abs_moment(double r) const {
  if (!(r >= 0.0)) throw InputError("abs_moment: order must be non-negative");
  if (r == 0.0) return 1.0;
  switch (kind) {
    case Kind::Gaussian:
      // E|Z|^r = 2^{r/2} Gamma((r+1)/2) / sqrt(pi).
      return std::exp(0.5 * r * std::log(2.0) + log_gamma((r + 1.0) / 2.0) - log_gamma(0.5));
    case Kind::Uniform:
      return 1.0 / (r + 1.0);
    case Kind::Bernoulli: {
      const double mu = p1;
      if (centered) return mu * std::pow(1.0 - mu, r) + (1.0 - mu) * std::pow(mu, r);
      return mu;  // E|X|^r = mu for X in {0,1}
    }
    case Kind::Rademacher:
      return 1.0;
    case Kind::Exponential: {
      if (!centered) return std::exp(log_gamma(r + 1.0) + r * std::log(p1));
      // |X - lambda| = lambda |E - 1| for a unit exponential E:
      // E|E-1|^r = e^{-1} (Gamma(r+1) + int_0^1 u^r e^u du).
      const double tail = std::exp(log_gamma(r + 1.0));
      const double head = subw::integrate::simpson(
          [r](double u) { return std::pow(u, r) * std::exp(u); }, 0.0, 1.0, 1e-13);
      return std::pow(p1, r) * std::exp(-1.0) * (tail + head);
    }
    case Kind::Weibull: {
      if (!centered) return std::exp(log_gamma(r / p1 + 1.0));
      const double m = mean();
      const double theta = p1;
      const auto f = [m, theta, r](double x) {
        const double dens = theta * std::pow(x, theta - 1.0) * std::exp(-std::pow(x, theta));
        return std::pow(std::fabs(x - m), r) * dens;
      };
      return subw::integrate::simpson(f, 0.0, m, 1e-12) +
             subw::integrate::simpson_to_inf(f, m, 1e-12);
    }
    case Kind::SymWeibull:
      return std::exp(r * std::log(p2) + log_gamma(r / p1 + 1.0));
    case Kind::Poisson: {
      const double c = centered ? p1 : 0.0;
      return poisson_series(p1, [c, r](double x) { return std::pow(std::fabs(x - c), r); });
    }
    case Kind::NegBinomial: {
      const double c = centered ? p1 : 0.0;
      return negbin_series(p1, p2, [c, r](double y) { return std::pow(std::fabs(y - c), r); });
    }
    case Kind::Pareto: {
      if (r >= p1) {
        throw NumericError("pareto abs_moment: moment of order >= alpha does not exist");
      }
      const double alpha = p1, kmin = p2;
      if (!centered) return alpha * std::pow(kmin, r) / (alpha - r);
      const double m = mean();
      const auto f = [alpha, kmin, m, r](double x) {
        const double dens = alpha * std::pow(kmin, alpha) / std::pow(x, alpha + 1.0);
        return std::pow(std::fabs(x - m), r) * dens;
      };
      return subw::integrate::simpson(f, kmin, m, 1e-12) +
             subw::integrate::simpson_to_inf(f, m, 1e-12);
    }
    case Kind::PointMass:
      return centered ? 0.0 : std::pow(std::fabs(p1), r);
  }
  throw InputError("abs_moment: unknown kind");
}

bool Distribution::has_cdf() const {
  switch (kind) {
    case Kind::Gaussian:
    case Kind::Uniform:
    case Kind::Exponential:
    case Kind::Weibull:
    case Kind::SymWeibull:
    case Kind::Pareto:
      return true;
    default:
      return false;
  }
}

double Distribution::cdf(double x) const {
  const double shift = centered ? mean() : 0.0;
  const double y = x + shift;  // CDF of the uncentered law at the shifted point
  switch (kind) {
    case Kind::Gaussian:
      return gaussian_cdf(y);
    case Kind::Uniform:
      return std::clamp((y + 1.0) / 2.0, 0.0, 1.0);
    case Kind::Exponential:
      return y <= 0.0 ? 0.0 : 1.0 - std::exp(-y / p1);
    case Kind::Weibull:
      return y <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(y, p1));
    case Kind::SymWeibull: {
      if (y >= 0.0) return 0.5 + 0.5 * (1.0 - std::exp(-std::pow(y / p2, p1)));
      return 0.5 * std::exp(-std::pow(-y / p2, p1));
    }
    case Kind::Pareto:
      return y <= p2 ? 0.0 : 1.0 - std::pow(p2 / y, p1);
    default:
      throw InputError("cdf: not available for this law");
  }
}

bool Distribution::has_abs_mgf(double theta) const {
  switch (kind) {
    case Kind::Weibull: return theta == p1 && !centered;
    case Kind::Exponential: return theta == 1.0;
    case Kind::Gaussian: return theta == 2.0 && !centered;
    case Kind::Poisson: return theta == 1.0 && !centered;
    case Kind::NegBinomial: return theta == 1.0 && !centered;
    case Kind::Bernoulli: return true;
    case Kind::Rademacher: return true;
    case Kind::PointMass: return !centered;
    case Kind::Uniform: return theta == 1.0;
    default: return false;
  }
}

Distribution::AbsMgf Distribution::abs_mgf(double theta) const {
  if (!has_abs_mgf(theta)) {
    throw InputError("abs_mgf: no analytic MGF for " + name() + " at theta=" + num(theta));
  }
  switch (kind) {
    case Kind::Weibull:
      // |X|^theta ~ Exp(1).
      return {[](double t) { return 1.0 / (1.0 - t); }, 1.0 - 1e-9};
    case Kind::Exponential: {
      const double lam = p1;
      if (!centered) {
        return {[lam](double t) { return 1.0 / (1.0 - lam * t); }, (1.0 - 1e-9) / lam};
      }
      // |X - lam| = lam |E - 1|: E e^{s|E-1|} = (e^s - e^{-1})/(1+s) + e^{-1}/(1-s).
      return {[lam](double t) {
                const double s = lam * t;
                return (std::exp(s) - std::exp(-1.0)) / (1.0 + s) +
                       std::exp(-1.0) / (1.0 - s);
              },
              (1.0 - 1e-9) / lam};
    }
    case Kind::Gaussian:
      return {[](double t) { return 1.0 / std::sqrt(1.0 - 2.0 * t); }, 0.5 * (1.0 - 1e-9)};
    case Kind::Poisson: {
      const double lam = p1;
      return {[lam](double t) { return std::exp(lam * std::expm1(t)); },
              std::log1p(60.0 / lam) + 1.0};
    }
    case Kind::NegBinomial: {
      const double mu = p1, k = p2;
      const double q = mu / (k + mu);
      return {[q, k](double t) {
                const double d = 1.0 - q * std::exp(t);
                if (d <= 0.0) return std::numeric_limits<double>::infinity();
                return std::pow((1.0 - q) / d, k);
              },
              std::log(1.0 / q) * (1.0 - 1e-12)};
    }
    case Kind::Bernoulli: {
      const double mu = p1;
      if (!centered) {
        return {[mu](double t) { return 1.0 - mu + mu * std::exp(t); },
                std::log1p(1.0 / mu) + 5.0};
      }
      const double a = std::pow(1.0 - mu, theta), b = std::pow(mu, theta);
      return {[mu, a, b](double t) {
                return mu * std::exp(t * a) + (1.0 - mu) * std::exp(t * b);
              },
              500.0 / std::max(a, b)};
    }
    case Kind::Rademacher:
      return {[](double t) { return std::exp(t); }, 500.0};
    case Kind::PointMass: {
      const double a = std::pow(std::fabs(p1), theta);
      if (a == 0.0) {
        return {[](double) { return 1.0; }, 1.0};
      }
      return {[a](double t) { return std::exp(t * a); }, 500.0 / a};
    }
    case Kind::Uniform:
      // |X| ~ Uniform[0,1]: E e^{t|X|} = (e^t - 1)/t.
      return {[](double t) { return t == 0.0 ? 1.0 : std::expm1(t) / t; }, 500.0};
    default:
      break;
  }
  throw InputError("abs_mgf: unknown kind");
}

namespace {

Distribution make(Kind k, double a = 0.0, double b = 0.0) {
  Distribution d;
  d.kind = k;
  d.p1 = a;
  d.p2 = b;
  return d;
}

}  // namespace

Distribution gaussian() { return make(Kind::Gaussian); }
Distribution uniform_sym() { return make(Kind::Uniform); }

Distribution bernoulli(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw InputError("bernoulli: mu must lie in (0,1)");
  return make(Kind::Bernoulli, mu);
}

Distribution rademacher() { return make(Kind::Rademacher); }

Distribution exponential(double scale) {
  if (!(scale > 0.0)) throw InputError("exponential: scale must be positive");
  return make(Kind::Exponential, scale);
}

Distribution weibull(double theta) {
  if (!(theta > 0.0)) throw InputError("weibull: shape must be positive");
  return make(Kind::Weibull, theta);
}

Distribution sym_weibull(double theta, double scale) {
  if (!(theta > 0.0)) throw InputError("symweibull: shape must be positive");
  if (!(scale > 0.0)) throw InputError("symweibull: scale must be positive");
  return make(Kind::SymWeibull, theta, scale);
}

Distribution poisson(double lambda) {
  if (!(lambda > 0.0)) throw InputError("poisson: mean must be positive");
  if (lambda > 30.0) throw InputError("poisson: mean exceeds the lambda <= 30 desk guard");
  return make(Kind::Poisson, lambda);
}

Distribution neg_binomial(double mu, double k) {
  if (!(mu > 0.0)) throw InputError("negbinomial: mean must be positive");
  if (!(k > 0.0)) throw InputError("negbinomial: shape must be positive");
  if (mu > 30.0) throw InputError("negbinomial: mean exceeds the mu <= 30 desk guard");
  return make(Kind::NegBinomial, mu, k);
}

Distribution pareto(double alpha, double k) {
  if (!(alpha > 0.0) || !(k > 0.0)) throw InputError("pareto: parameters must be positive");
  return make(Kind::Pareto, alpha, k);
}

Distribution point_mass(double c) { return make(Kind::PointMass, c); }

Distribution centered(Distribution d) {
  d.centered = true;
  return d;
}

Distribution parse(const std::string& text) {
  std::string s = text;
  bool want_centered = false;
  const std::string prefix = "centered:";
  if (s.rfind(prefix, 0) == 0) {
    want_centered = true;
    s = s.substr(prefix.size());
  }
  std::string name = s;
  std::vector<double> args;
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    name = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      const std::string tok = rest.substr(pos, next - pos);
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        args.push_back(v);
      } catch (const std::exception&) {
        throw InputError("distribution: bad numeric parameter '" + tok + "'");
      }
      pos = next + 1;
    }
  }
  auto need = [&args, &name](std::size_t n) {
    if (args.size() != n) {
      throw InputError("distribution '" + name + "': expected " + std::to_string(n) +
                       " parameter(s)");
    }
  };
  Distribution d;
  if (name == "gaussian" || name == "normal") {
    need(0);
    d = gaussian();
  } else if (name == "uniform") {
    need(0);
    d = uniform_sym();
  } else if (name == "bernoulli") {
    need(1);
    d = bernoulli(args[0]);
  } else if (name == "rademacher") {
    need(0);
    d = rademacher();
  } else if (name == "exponential") {
    if (args.empty()) args.push_back(1.0);
    need(1);
    d = exponential(args[0]);
  } else if (name == "weibull") {
    need(1);
    d = weibull(args[0]);
  } else if (name == "symweibull") {
    if (args.size() == 1) args.push_back(1.0);
    need(2);
    d = sym_weibull(args[0], args[1]);
  } else if (name == "poisson") {
    need(1);
    d = poisson(args[0]);
  } else if (name == "negbinomial") {
    need(2);
    d = neg_binomial(args[0], args[1]);
  } else if (name == "pareto") {
    need(2);
    d = pareto(args[0], args[1]);
  } else if (name == "pointmass") {
    need(1);
    d = point_mass(args[0]);
  } else {
    throw InputError("distribution: unknown law '" + name + "'");
  }
  if (want_centered) d = centered(d);
  return d;
}

double sample_gamma(double shape, double scale, subw::rng::RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw InputError("sample_gamma: bad parameters");
  if (shape < 1.0) {
    // Boost to shape + 1 and correct with U^{1/shape}.
    const double g = sample_gamma(shape + 1.0, scale, rng);
    return g * std::pow(rng.uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

double sample_poisson(double lambda, subw::rng::RngStream& rng, double cap) {
  if (!(lambda >= 0.0)) throw InputError("sample_poisson: mean must be non-negative");
  if (lambda > cap) throw InputError("sample_poisson: mean exceeds the desk guard");
  if (lambda == 0.0) return 0.0;
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double f = p;
  int x = 0;
  const int hard = static_cast<int>(lambda + 40.0 * std::sqrt(lambda) + 60.0);
  while (u > f && x < hard) {
    ++x;
    p *= lambda / x;
    f += p;
  }
  return static_cast<double>(x);
}

}  // namespace subw::dist
