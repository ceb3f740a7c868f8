#include "subw/integrate.hpp"

#include <cmath>

#include "subw/errors.hpp"

namespace subw::integrate {

namespace {

double simpson_rule(const Fn& f, double a, double fa, double b, double fb,
                    double* fm_out) {
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  *fm_out = fm;
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const Fn& f, double a, double fa, double b, double fb, double fm,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  double flm, frm;
  const double left = simpson_rule(f, a, fa, m, fm, &flm);
  const double right = simpson_rule(f, m, fm, b, fb, &frm);
  const double delta = left + right - whole;
  if (depth <= 0) return left + right + delta / 15.0;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double simpson(const Fn& f, double a, double b, double tol, int max_depth) {
  if (!(b >= a)) throw InputError("simpson: interval endpoints out of order");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  double fm;
  const double whole = simpson_rule(f, a, fa, b, fb, &fm);
  const double v = adaptive(f, a, fa, b, fb, fm, whole, tol, max_depth);
  if (!std::isfinite(v)) throw NumericError("simpson: non-finite integral");
  return v;
}

double simpson_to_inf(const Fn& f, double a, double tol) {
  // x = a + u/(1-u), dx = du/(1-u)^2, u in [0, 1).
  const auto g = [&f, a](double u) {
    const double om = 1.0 - u;
    const double x = a + u / om;
    return f(x) / (om * om);
  };
  // Stop just short of u = 1; the integrand must vanish there for convergent
  // integrals, so the truncation error is controlled by tol.
  return simpson(g, 0.0, 1.0 - 1e-9, tol);
}

}  // namespace subw::integrate
