/**
 * @file ou_math.hpp
 * @brief Numerically stable exponential-decay integrals shared by the
 *        closed-form adjustments and the simulation engine.
 *
 * Everything here is a deterministic function of mean-reversion rates
 * a, b >= 0 and a horizon x >= 0.  The factors of the form (1-e^{-ax})/a
 * and their divided differences are singular as the rates tend to zero;
 * each function switches to a truncated series when the rate-times-horizon
 * product is small, so results stay accurate through a = 0 itself.
 */

#pragma once

namespace repoconv {

/// g_factor(a, x) = integral_0^x e^{-a u} du = (1 - e^{-a x}) / a.
/// Continuous in a with g_factor(0, x) = x.  Accepts x = +infinity
/// (returns 1/a for a > 0).
double g_factor(double a, double x);

/// tail_moment(n, a, x) = integral_0^x u^n e^{-a u} du for n >= 0.
double tail_moment(int n, double a, double x);

/// g_difference(a, b, x) = [g_factor(a, x) - g_factor(a + b, x)] / b.
///
/// Divided difference of g_factor in the rate; the only genuinely
/// singular object in the closed-form adjustments.  For b*x below 1e-4
/// it is evaluated by the second-order expansion in b around the limit
/// b -> 0 (which equals tail_moment(1, a, x)).
double g_difference(double a, double b, double x);

/// g_moment_integral(n, a, x) = integral_0^x v^n g_factor(a, v) dv.
double g_moment_integral(int n, double a, double x);

/// g_product_integral(a, b, x) = integral_0^x g_factor(a, v) g_factor(b, v) dv.
/// Symmetric in (a, b); the variance/covariance kernel of integrated
/// Ornstein-Uhlenbeck noise.
double g_product_integral(double a, double b, double x);

}  // namespace repoconv
