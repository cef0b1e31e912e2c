#include "repoconv/convexity.hpp"

#include <cmath>
#include <stdexcept>

#include "repoconv/ou_math.hpp"

namespace repoconv {

namespace {

void require_finite_horizon_or_positive_theta(double mu, double theta) {
    if (std::isinf(mu) && theta == 0.0) {
        throw std::domain_error(
            "convexity: infinite bond maturity requires theta > 0");
    }
}

// The two-line closed form on precomputed horizons.  convexity_adjustment
// and the maturity/forwardness pieces must see bit-identical factor
// arguments, otherwise the decomposition identity only holds up to the
// conditioning of the divided difference.
double total_shape(double x_s, double x_e, double m_s, double m_e, double delta,
                   double theta, double kappa) {
    const double line1 = g_factor(theta, m_e) * g_difference(theta, kappa, x_e);
    const double line2 =
        g_factor(theta, m_s) * (g_difference(theta, kappa, x_s) +
                                g_factor(kappa, delta) * g_factor(theta + kappa, x_s));
    return line1 - line2;
}

}  // namespace

void ModelParams::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("ModelParams: sigma must be >= 0");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("ModelParams: epsilon must be >= 0");
    }
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("ModelParams: theta must be >= 0");
    }
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("ModelParams: kappa must be >= 0");
    }
    if (!(std::fabs(rho) <= 1.0)) {
        throw std::invalid_argument("ModelParams: |rho| must be <= 1");
    }
}

void RepoSchedule::validate() const {
    if (!std::isfinite(fix) || !std::isfinite(start) || !std::isfinite(end)) {
        throw std::invalid_argument("RepoSchedule: fix/start/end must be finite");
    }
    if (std::isnan(bond_maturity)) {
        throw std::invalid_argument("RepoSchedule: bond maturity must not be NaN");
    }
    if (!(fix <= start && start < end && end <= bond_maturity)) {
        throw std::invalid_argument(
            "RepoSchedule: dates must satisfy fix <= start < end <= maturity");
    }
    if (!(accrual > 0.0) || !std::isfinite(accrual)) {
        throw std::invalid_argument("RepoSchedule: accrual must be > 0");
    }
}

double b_function(double tau, double delta, double mu, double theta, double kappa) {
    if (!(tau >= 0.0)) throw std::invalid_argument("b_function: tau must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("b_function: delta must be > 0");
    if (!(mu >= 0.0)) throw std::invalid_argument("b_function: mu must be >= 0");
    if (!(theta >= 0.0) || !(kappa >= 0.0)) {
        throw std::invalid_argument("b_function: rates must be >= 0");
    }
    require_finite_horizon_or_positive_theta(mu, theta);
    if (tau == 0.0 && mu == 0.0) return 0.0;  // spot-starting repo to maturity
    return total_shape(tau, tau + delta, delta + mu, mu, delta, theta, kappa);
}

double convexity_adjustment(const ModelParams& params, const RepoSchedule& schedule) {
    params.validate();
    schedule.validate();
    const double scale = params.rho * params.sigma * params.epsilon;
    if (scale == 0.0) return 0.0;
    if (schedule.fix == schedule.start && schedule.end == schedule.bond_maturity) {
        return 0.0;  // spot-starting repo to maturity
    }
    require_finite_horizon_or_positive_theta(schedule.bond_maturity - schedule.end,
                                             params.theta);
    // horizons computed exactly as in maturity_adjustment/forwardness_adjustment
    return scale * total_shape(schedule.start - schedule.fix,
                               schedule.end - schedule.fix,
                               schedule.bond_maturity - schedule.start,
                               schedule.bond_maturity - schedule.end,
                               schedule.end - schedule.start, params.theta,
                               params.kappa);
}

double maturity_adjustment(const ModelParams& params, double t, double e, double T) {
    params.validate();
    if (std::isnan(T) || !(t <= e && e <= T)) {
        throw std::invalid_argument("maturity_adjustment: need t <= e <= T");
    }
    const double scale = params.rho * params.sigma * params.epsilon;
    if (scale == 0.0 || e == T || t == e) return 0.0;
    require_finite_horizon_or_positive_theta(T - e, params.theta);
    return scale * g_factor(params.theta, T - e) *
           g_difference(params.theta, params.kappa, e - t);
}

double forwardness_adjustment(const ModelParams& params, double t, double s,
                              double e, double T) {
    params.validate();
    if (std::isnan(T) || !(t <= s && s < e && e <= T)) {
        throw std::invalid_argument("forwardness_adjustment: need t <= s < e <= T");
    }
    const double scale = params.rho * params.sigma * params.epsilon;
    if (scale == 0.0 || s == t) return 0.0;
    require_finite_horizon_or_positive_theta(T - s, params.theta);
    return -scale * g_factor(params.theta, T - s) * g_factor(params.kappa, e - s) *
           g_factor(params.theta + params.kappa, s - t);
}

double liquidity_adjustment(double mean_s, double std_s) {
    if (!(std_s >= 0.0)) {
        throw std::invalid_argument("liquidity_adjustment: std must be >= 0");
    }
    return mean_s + 0.5 * std_s * std_s;
}

Adjustments compute_adjustments(const ModelParams& params,
                                const RepoSchedule& schedule, double liquidity_mean,
                                double liquidity_std) {
    Adjustments adj{};
    adj.liquidity = liquidity_adjustment(liquidity_mean, liquidity_std);
    adj.maturity_end = maturity_adjustment(params, schedule.fix, schedule.end,
                                           schedule.bond_maturity);
    adj.maturity_start = maturity_adjustment(params, schedule.fix, schedule.start,
                                             schedule.bond_maturity);
    adj.forwardness = forwardness_adjustment(params, schedule.fix, schedule.start,
                                             schedule.end, schedule.bond_maturity);
    adj.total = convexity_adjustment(params, schedule);
    // Decomposition identity; the scale guard keeps the absolute bound
    // meaningful for extreme horizon/volatility combinations.
    const double recombined = (adj.maturity_end - adj.maturity_start) + adj.forwardness;
    const double scale = std::fabs(adj.maturity_end) + std::fabs(adj.maturity_start) +
                         std::fabs(adj.forwardness);
    if (!(std::fabs(adj.total - recombined) <= 1e-14 * std::fmax(1.0, scale))) {
        throw std::logic_error("compute_adjustments: decomposition identity violated");
    }
    return adj;
}

}  // namespace repoconv
