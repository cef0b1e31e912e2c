/**
 * @file quadrature.hpp
 * @brief Deterministic composite Gauss-Legendre quadrature.
 *
 * Used for the covariance-integral oracle and for cross-checking the
 * analytic Ornstein-Uhlenbeck moments.  The integrands in this project
 * are smooth exponentials, for which a modest fixed order already
 * reaches machine precision; panels add safety for long horizons.
 */

#pragma once

#include <functional>

namespace repoconv {

/// Integrate f over [a, b] with `panels` equal panels of 24-point
/// Gauss-Legendre each.  panels <= 0 selects one panel per two units of
/// integration range (at least one).
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 0);

}  // namespace repoconv
