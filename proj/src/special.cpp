#include "subw/special.hpp"

#include <cmath>
#include <limits>

#include "subw/errors.hpp"

namespace subw::special {

double log_gamma(double x) {
  if (!(x > 0.0)) throw InputError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_factorial(int n) {
  if (n < 0) throw InputError("log_factorial: argument must be non-negative");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double incbeta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("incomplete_beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("incomplete_beta: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  // Use the symmetry relation to keep the continued fraction in its fast zone.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incbeta_cf(a, b, x) / a;
  }
  return 1.0 - front * incbeta_cf(b, a, 1.0 - x) / b;
}

double incomplete_beta_inv(double a, double b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("incomplete_beta_inv: p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  double x = a / (a + b);  // mean as a starting interior point
  for (int it = 0; it < 200; ++it) {
    const double v = incomplete_beta(a, b, x);
    if (v > p) {
      hi = x;
    } else {
      lo = x;
    }
    x = 0.5 * (lo + hi);
    if (hi - lo < 1e-14) break;
  }
  // Newton polish: d/dx I_x(a,b) = x^{a-1}(1-x)^{b-1}/B(a,b).
  const double ln_beta = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  for (int it = 0; it < 5; ++it) {
    if (x <= 0.0 || x >= 1.0) break;
    const double f = incomplete_beta(a, b, x) - p;
    const double ld = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_beta;
    const double deriv = std::exp(ld);
    if (!(deriv > 0.0) || !std::isfinite(deriv)) break;
    const double step = f / deriv;
    const double nx = x - step;
    if (nx <= lo || nx >= hi) break;
    x = nx;
  }
  return x;
}

double kolmogorov_tail(double k) {
  if (k <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * k * k);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  const double q = 2.0 * sum;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

}  // namespace subw::special
