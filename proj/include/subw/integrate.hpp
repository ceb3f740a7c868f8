#pragma once

/*
 * Adaptive Simpson quadrature for the handful of smooth one-dimensional
 * expectations that have no closed form (central absolute moments of
 * continuous laws, expected truncation-function values). Supports finite
 * intervals and [a, inf) via the rational substitution x = a + u/(1-u).
 */

#include <functional>

namespace subw::integrate {

using Fn = std::function<double(double)>;

// Integral of f over [a, b] to absolute tolerance tol (adaptive Simpson).
double simpson(const Fn& f, double a, double b, double tol = 1e-11,
               int max_depth = 60);

// Integral of f over [a, inf); f must decay at least like x^{-1-eps}.
double simpson_to_inf(const Fn& f, double a, double tol = 1e-11);

}  // namespace subw::integrate
