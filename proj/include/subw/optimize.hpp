#pragma once

/*
 * One-dimensional root finding and scalar optimization used by the constant
 * and norm computations.
 *
 * Every supremum/infimum in the library is computed twice on demand: once with
 * a dense grid scan and once with a coarse grid followed by golden-section
 * refinement. The two routes are deliberately independent so they can serve as
 * cross-checks of each other (the acceptance suite gates on their agreement).
 */

#include <functional>

namespace subw::opt {

using Fn = std::function<double(double)>;

// Bisection for f(x) = 0 given a sign change on [lo, hi].
// Returns the midpoint of the final bracket (width <= xtol).
double bisect_root(const Fn& f, double lo, double hi, double xtol = 1e-12,
                   int max_iter = 200);

// Finds t > 0 with g(t) = level for strictly increasing g. The bracket is
// grown geometrically from t0 until g >= level (guarding non-finite values),
// then bisected. Throws NumericError("level ... unreachable") when the bracket
// growth exhausts max_growth doublings below the level, and
// NumericError("...blow-up...") when g is non-finite before ever reaching it.
double invert_increasing(const Fn& g, double level, double t0 = 1e-12,
                         int max_growth = 240, double xtol = 1e-13);

// Golden-section maximization of f on [lo, hi] (unimodal on the bracket).
double golden_max(const Fn& f, double lo, double hi, double xtol = 1e-10);

struct ScanResult {
  double arg = 0.0;    // maximizing / minimizing argument
  double value = 0.0;  // extreme value of f
  bool at_upper_edge = false;  // extremum sits on the last grid point
};

// Dense grid scan for the maximum of f over [lo, hi] with the given step.
ScanResult grid_max(const Fn& f, double lo, double hi, double step);

// Coarse grid + golden-section refinement around the best grid cell.
ScanResult refined_max(const Fn& f, double lo, double hi, double coarse_step,
                       double xtol = 1e-10);

// Minimization counterparts (implemented as maximization of -f).
ScanResult grid_min(const Fn& f, double lo, double hi, double step);
ScanResult refined_min(const Fn& f, double lo, double hi, double coarse_step,
                       double xtol = 1e-10);

}  // namespace subw::opt
