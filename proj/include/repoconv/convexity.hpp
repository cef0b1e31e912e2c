/**
 * @file convexity.hpp
 * @brief Closed-form liquidity, maturity, forwardness, and total convexity
 *        adjustments for repo rates under the correlated two-factor
 *        Hull-White basis model.
 *
 * Conventions: times are year fractions, rates and volatilities absolute
 * per-annum decimals (0.01 = 1% = 100bp).  A bond maturity of +infinity
 * is the explicit infinite-maturity marker; it requires theta > 0 unless
 * rho*sigma*epsilon vanishes.
 */

#pragma once

namespace repoconv {

/// Parameters of the correlated Hull-White pair driving the bond discount
/// rate (sigma, theta) and the discount basis (epsilon, kappa).
struct ModelParams {
    double sigma = 0.0;    // normal volatility of the bond discount rate, per sqrt(year)
    double epsilon = 0.0;  // normal volatility of the discount basis, per sqrt(year)
    double theta = 0.0;    // mean reversion rate of the bond discount rate, per year
    double kappa = 0.0;    // mean reversion rate of the discount basis, per year
    double rho = 0.0;      // correlation of the two Brownian drivers, in [-1, 1]

    void validate() const;
};

/// Dates of one repo: rate fixes at `fix`, the period runs [start, end],
/// on the bond maturing at `bond_maturity` (may be +infinity), with the
/// supplied accrual fraction for the simple rate.
struct RepoSchedule {
    double fix;
    double start;
    double end;
    double bond_maturity;
    double accrual;

    void validate() const;
};

/// The computed adjustments for one repo, all in log units.
struct Adjustments {
    double liquidity;       // L
    double maturity_end;    // M at the period end
    double maturity_start;  // M at the period start
    double forwardness;     // F
    double total;           // C = (maturity_end - maturity_start) + forwardness
};

/// Core convexity shape B[tau, delta, mu; theta, kappa], so that the total
/// adjustment is rho*sigma*epsilon*B.  tau = fix-to-start, delta = period
/// length, mu = end-to-maturity.  Continuous through theta = 0, kappa = 0
/// and theta + kappa = 0.
double b_function(double tau, double delta, double mu, double theta, double kappa);

/// Total adjustment C for the schedule.
double convexity_adjustment(const ModelParams& params, const RepoSchedule& schedule);

/// Maturity adjustment M for a repo observed at t ending at e on the bond
/// maturing at T.  Zero exactly in the repo-to-maturity case e = T.
double maturity_adjustment(const ModelParams& params, double t, double e, double T);

/// Forwardness adjustment F.  Zero exactly in the spot-starting case s = t;
/// strictly negative for rho > 0 and strictly ordered dates.
double forwardness_adjustment(const ModelParams& params, double t, double s,
                              double e, double T);

/// Liquidity adjustment from the moments of the integrated liquidity
/// basis: mean + variance/2.
double liquidity_adjustment(double mean_s, double std_s);

/// Bundles the four adjustments and checks the decomposition
/// C = (M_e - M_s) + F.
Adjustments compute_adjustments(const ModelParams& params,
                                const RepoSchedule& schedule,
                                double liquidity_mean = 0.0,
                                double liquidity_std = 0.0);

}  // namespace repoconv
