/**
 * @file repo_pricing.hpp
 * @brief Repo rates and repo discount factors from a bond curve plus the
 *        basis-model adjustments; repo-curve extrapolation beyond the
 *        observed horizon.
 *
 * All operations price as of the bond curve's valuation time; discount
 * factors forward of valuation are curve ratios.  The liquidity
 * adjustment is zero throughout this module.
 */

#pragma once

#include <optional>
#include <vector>

#include "repoconv/convexity.hpp"
#include "repoconv/curves.hpp"

namespace repoconv {

/// Immutable bundle of the bond curve, the basis-model parameters, and an
/// optional observed repo curve whose last pillar is the observation
/// horizon E.
class RepoCurveView {
public:
    RepoCurveView(DiscountCurve bond_curve, ModelParams params,
                  std::optional<DiscountCurve> observed_repo_curve = std::nullopt);

    const DiscountCurve& bond_curve() const { return bond_curve_; }
    const ModelParams& params() const { return params_; }
    bool has_observed_curve() const { return observed_repo_curve_.has_value(); }
    const DiscountCurve& observed_repo_curve() const;

    /// Observation horizon E (last pillar of the observed curve).
    double observation_horizon() const;

private:
    DiscountCurve bond_curve_;
    ModelParams params_;
    std::optional<DiscountCurve> observed_repo_curve_;
};

/// Repo discount factor for the infinite-maturity bond,
/// bond df * exp(-M with the maturity factor at its T -> infinity limit).
/// Requires theta > 0 unless rho*sigma*epsilon = 0.
double repo_df_infinite(const RepoCurveView& view, double e);

/// Finite-maturity repo discount factor: geometric interpolation between
/// the bond df (weight e^{-theta (T-e)}) and the infinite-maturity repo
/// df.  T may be +infinity.
double repo_df_finite(const RepoCurveView& view, double e, double T);

/// General repo rate: ratio of finite-maturity repo dfs at the period
/// start and end, times exp(forwardness adjustment), annualised with the
/// schedule accrual.  The bond maturity need not lie within the curve
/// span (only start/end dfs are read).
double repo_rate(const RepoCurveView& view, const RepoSchedule& schedule);

/// Instantaneous repo forward: bond forward plus the model basis
/// rho*sigma*epsilon*e^{-theta(e-t)}*g_factor(kappa, e-t)/theta.
double repo_forward_rate(const RepoCurveView& view, double e);

/// Repo forward beyond the observation horizon E, anchored on the
/// repo-bond basis of the last observed segment and decayed with the
/// model shape.  Requires an observed repo curve and E < e <= bond span.
double extrapolate_repo_forward(const RepoCurveView& view, double e);

/// Extends the observed repo curve to the given pillar times (all beyond
/// E).  Within each new segment the bond-curve part of the forward is
/// integrated exactly from the bond dfs and the basis part with the
/// midpoint rule; the result splices continuously onto the observed
/// curve.  An empty pillar list returns the observed curve unchanged.
DiscountCurve build_extrapolated_repo_curve(const RepoCurveView& view,
                                            const std::vector<double>& pillar_times);

}  // namespace repoconv
