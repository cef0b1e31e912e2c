/**
 * @file mc_oracle.hpp
 * @brief Independent verification of the closed-form adjustments:
 *        deterministic quadrature of the covariance integral, and exact
 *        joint-Gaussian Monte Carlo of the correlated Hull-White pair
 *        pricing the repo payoff from first principles.
 *
 * The simulation draws the terminal state and the integrated factors
 * from their analytic joint covariance (optionally in several exact
 * transition steps), so there is no discretisation bias.  Estimates
 * depend only on (seed, n_paths, antithetic, n_steps): the block size
 * and the number of worker threads are scheduling knobs that cannot
 * change a single bit of the result.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "repoconv/convexity.hpp"
#include "repoconv/curves.hpp"

namespace repoconv {

struct SimConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 0;
    std::uint64_t block_size = 65536;  // parallel work-unit size (scheduling only)
    bool antithetic = false;           // average each path with its mirrored draw
    int n_steps = 1;                   // exact-transition substeps per interval
    unsigned n_threads = 0;            // 0 = hardware concurrency

    void validate() const;
};

struct SimResult {
    double estimate = 0.0;
    double std_error = 0.0;  // infinite when n_paths < 2
    std::uint64_t n_paths = 0;
};

/// Piecewise-constant deterministic shifts making the Gaussian factor
/// model reprice the input curves at their pillars.
struct ShiftFunctions {
    double valuation_time = 0.0;
    std::vector<double> times;        // segment right endpoints, ascending
    std::vector<double> bond_shift;   // per segment
    std::vector<double> basis_shift;  // per segment; may stop short of times

    /// Integral of the bond shift over [valuation_time, x].
    double bond_integral(double x) const;
    /// Integral of the basis shift over [valuation_time, x].
    double basis_integral(double x) const;
};

/// Calibrates the shifts to the bond and derivative discount curves with
/// closed-form Gaussian expectations and verifies that the model reprices
/// every pillar to 1e-10 relative (throws std::runtime_error otherwise).
ShiftFunctions calibrate_shifts(const DiscountCurve& bond_curve,
                                const DiscountCurve& derivative_curve,
                                const ModelParams& params);

/// The total adjustment evaluated by Gauss-Legendre quadrature of the
/// covariance integrals; shares no code with the closed-form branch
/// logic.  This is the deterministic oracle for convexity_adjustment.
double quadrature_covariance(const ModelParams& params, const RepoSchedule& schedule);

/// Simulates the fair repo rate from the zero-price condition:
/// f = (1/accrual) (E[D_e p_e/p_s] / E[D_e] - 1) with D_e the derivative
/// discount kernel and p the model bond prices.  The schedule must fix at
/// the curves' valuation time; start and end must lie within the
/// derivative curve span.  The bond maturity may be +infinity.
///
/// The calibrated model reproduces the curves at their pillars; a start
/// or end date between pillars carries a representation gap of order
/// (segment width)^2 in the simulated drift, so comparisons against the
/// curve-based closed form are cleanest on pillar dates.
SimResult mc_repo_rate(const DiscountCurve& bond_curve,
                       const DiscountCurve& derivative_curve,
                       const ModelParams& params, const RepoSchedule& schedule,
                       const SimConfig& config);

/// Simulates the total adjustment as the log-ratio of the three
/// expectations defining it, in the risk-neutral measure, with a
/// delta-method standard error.  The optional constant mean-reversion
/// levels change the simulated discount factors but, in expectation, not
/// the estimate.
SimResult mc_convexity(const ModelParams& params, const RepoSchedule& schedule,
                       const SimConfig& config, double bond_level = 0.0,
                       double basis_level = 0.0);

namespace detail {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Covariance of (X_s, X_e, int_0^e X, int_0^e Y) for the zero-level
/// factor pair started at 0, with 0 <= s <= e.
Mat4 terminal_covariance(const ModelParams& params, double s, double e);

/// Covariance of the one-step transition noise
/// (n_x, n_y, n_intx, n_inty) over a step of length h.
Mat4 step_noise_covariance(const ModelParams& params, double h);

/// Lower Cholesky factor tolerant of semi-definite input (zero rows for
/// deterministic components).
Mat4 cholesky_psd(const Mat4& a);

}  // namespace detail

}  // namespace repoconv
