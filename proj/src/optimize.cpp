#include "subw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "subw/errors.hpp"

namespace subw::opt {

double bisect_root(const Fn& f, double lo, double hi, double xtol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw NumericError("bisect_root: non-finite endpoint value");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericError("bisect_root: no sign change on bracket");
  }
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double invert_increasing(const Fn& g, double level, double t0, int max_growth,
                         double xtol) {
  double lo = 0.0;     // g(lo) < level by convention (0 excluded from evals)
  double t = t0;
  double gt = g(t);
  if (!std::isfinite(gt)) {
    throw NumericError("invert_increasing: blow-up at the initial point");
  }
  if (gt >= level) {
    // Level already reached at t0: bisect on [0, t0] against the level.
    double hi = t;
    double lo2 = 0.0;
    for (int it = 0; it < 200 && hi - lo2 > xtol * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo2 + hi);
      const double gm = g(mid);
      if (!std::isfinite(gm)) throw NumericError("invert_increasing: blow-up inside bracket");
      if (gm >= level) hi = mid; else lo2 = mid;
    }
    return 0.5 * (lo2 + hi);
  }
  int growth = 0;
  while (gt < level) {
    if (++growth > max_growth) {
      throw NumericError("invert_increasing: level unreachable on the bracket");
    }
    lo = t;
    t *= 2.0;
    gt = g(t);
    if (!std::isfinite(gt)) {
      // Non-finite beyond the last finite point: the crossing (if any) lies in
      // (lo, t); shrink towards lo looking for a finite value >= level.
      double hi = t;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::isfinite(gm)) {
          if (gm >= level) { gt = gm; t = mid; break; }
          lo = mid;
        } else {
          hi = mid;
        }
        if (hi - lo <= xtol * std::max(1.0, hi)) {
          throw NumericError("invert_increasing: MGF blow-up before reaching the level");
        }
      }
      if (!std::isfinite(gt) || gt < level) {
        throw NumericError("invert_increasing: MGF blow-up before reaching the level");
      }
    }
  }
  // Crossing bracketed in (lo, t]: plain bisection.
  double hi = t;
  for (int it = 0; it < 300 && hi - lo > xtol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (!std::isfinite(gm)) throw NumericError("invert_increasing: blow-up inside bracket");
    if (gm >= level) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double golden_max(const Fn& f, double lo, double hi, double xtol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;   // 0.618...
  const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;  // 0.382...
  double a = lo, b = hi;
  double h = b - a;
  if (h <= xtol) return 0.5 * (a + b);
  double c = a + invphi2 * h;
  double d = a + invphi * h;
  double fc = f(c);
  double fd = f(d);
  const int n = static_cast<int>(std::ceil(std::log(xtol / h) / std::log(invphi)));
  for (int k = 0; k < std::max(n, 1); ++k) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      h = invphi * h;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = invphi * h;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return fc > fd ? 0.5 * (a + d) : 0.5 * (c + b);
}

ScanResult grid_max(const Fn& f, double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0)) throw InputError("grid_max: empty or invalid grid");
  ScanResult best;
  best.arg = lo;
  best.value = f(lo);
  const long long cells = static_cast<long long>(std::ceil((hi - lo) / step));
  for (long long i = 1; i <= cells; ++i) {
    const double x = std::min(lo + static_cast<double>(i) * step, hi);
    const double v = f(x);
    if (v > best.value) {
      best.value = v;
      best.arg = x;
    }
  }
  best.at_upper_edge = (best.arg >= hi - 0.5 * step);
  return best;
}

ScanResult refined_max(const Fn& f, double lo, double hi, double coarse_step,
                       double xtol) {
  ScanResult coarse = grid_max(f, lo, hi, coarse_step);
  const double a = std::max(lo, coarse.arg - coarse_step);
  const double b = std::min(hi, coarse.arg + coarse_step);
  const double xstar = golden_max(f, a, b, xtol);
  const double vstar = f(xstar);
  ScanResult out = coarse;
  if (vstar > out.value) {
    out.arg = xstar;
    out.value = vstar;
  }
  out.at_upper_edge = (out.arg >= hi - coarse_step);
  return out;
}

ScanResult grid_min(const Fn& f, double lo, double hi, double step) {
  ScanResult r = grid_max([&f](double x) { return -f(x); }, lo, hi, step);
  r.value = -r.value;
  return r;
}

ScanResult refined_min(const Fn& f, double lo, double hi, double coarse_step,
                       double xtol) {
  ScanResult r = refined_max([&f](double x) { return -f(x); }, lo, hi, coarse_step, xtol);
  r.value = -r.value;
  return r;
}

}  // namespace subw::opt
