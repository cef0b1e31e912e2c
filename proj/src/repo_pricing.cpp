#include "repoconv/repo_pricing.hpp"

#include <cmath>
#include <stdexcept>

#include "repoconv/ou_math.hpp"

namespace repoconv {

namespace {

// Average repo-bond basis over the last observed segment, read from the
// same interval on both curves so the bond component cancels exactly.
double anchor_basis(const RepoCurveView& view) {
    const DiscountCurve& obs = view.observed_repo_curve();
    const DiscountCurve& bond = view.bond_curve();
    const auto& pillars = obs.pillars();
    const double e1 = pillars.back().time;
    const double e0 = pillars.size() > 1 ? pillars[pillars.size() - 2].time
                                         : obs.valuation_time();
    const double repo_fwd = -(obs.log_df(e1) - obs.log_df(e0)) / (e1 - e0);
    const double bond_fwd = -(bond.log_df(e1) - bond.log_df(e0)) / (e1 - e0);
    return repo_fwd - bond_fwd;
}

// Extrapolated basis at time e given the anchor at E.
double extrapolated_basis(const RepoCurveView& view, double anchor, double e) {
    const ModelParams& p = view.params();
    const double t = view.bond_curve().valuation_time();
    const double big_e = view.observation_horizon();
    return anchor * std::exp(-p.theta * (e - big_e)) *
           g_factor(p.kappa, e - t) / g_factor(p.kappa, big_e - t);
}

}  // namespace

RepoCurveView::RepoCurveView(DiscountCurve bond_curve, ModelParams params,
                             std::optional<DiscountCurve> observed_repo_curve)
    : bond_curve_(std::move(bond_curve)),
      params_(params),
      observed_repo_curve_(std::move(observed_repo_curve)) {
    params_.validate();
    if (observed_repo_curve_) {
        if (observed_repo_curve_->empty()) {
            throw std::invalid_argument("RepoCurveView: observed repo curve is empty");
        }
        if (observed_repo_curve_->valuation_time() != bond_curve_.valuation_time()) {
            throw std::invalid_argument(
                "RepoCurveView: curves must share the valuation time");
        }
        if (observed_repo_curve_->last_time() > bond_curve_.last_time()) {
            throw std::invalid_argument(
                "RepoCurveView: observed repo curve must span a prefix of the bond "
                "curve");
        }
    }
}

const DiscountCurve& RepoCurveView::observed_repo_curve() const {
    if (!observed_repo_curve_) {
        throw std::logic_error("RepoCurveView: no observed repo curve");
    }
    return *observed_repo_curve_;
}

double RepoCurveView::observation_horizon() const {
    return observed_repo_curve().last_time();
}

double repo_df_infinite(const RepoCurveView& view, double e) {
    const ModelParams& p = view.params();
    const double bond_df = view.bond_curve().df(e);  // also enforces the span
    const double scale = p.rho * p.sigma * p.epsilon;
    if (scale == 0.0) return bond_df;
    if (p.theta == 0.0) {
        throw std::domain_error("repo_df_infinite: requires theta > 0");
    }
    const double x = e - view.bond_curve().valuation_time();
    return bond_df * std::exp(-scale * g_difference(p.theta, p.kappa, x) / p.theta);
}

double repo_df_finite(const RepoCurveView& view, double e, double T) {
    if (std::isnan(T) || T < e) {
        throw std::invalid_argument("repo_df_finite: need T >= e");
    }
    const double bond_df = view.bond_curve().df(e);
    if (T == e) return bond_df;
    const double repo_df = repo_df_infinite(view, e);
    if (std::isinf(T)) return repo_df;
    const double w = std::exp(-view.params().theta * (T - e));
    return std::pow(bond_df, w) * std::pow(repo_df, 1.0 - w);
}

double repo_rate(const RepoCurveView& view, const RepoSchedule& schedule) {
    schedule.validate();
    const DiscountCurve& bond = view.bond_curve();
    const ModelParams& p = view.params();
    if (schedule.fix < bond.valuation_time()) {
        throw std::out_of_range("repo_rate: fix before the curve valuation time");
    }
    const double df_fix = bond.df(schedule.fix);
    const double df_s = bond.df(schedule.start) / df_fix;
    const double df_e = bond.df(schedule.end) / df_fix;
    const double m_s = maturity_adjustment(p, schedule.fix, schedule.start,
                                           schedule.bond_maturity);
    const double m_e =
        maturity_adjustment(p, schedule.fix, schedule.end, schedule.bond_maturity);
    const double f_adj = forwardness_adjustment(
        p, schedule.fix, schedule.start, schedule.end, schedule.bond_maturity);
    const double ratio = (df_s / df_e) * std::exp((m_e - m_s) + f_adj);
    return (ratio - 1.0) / schedule.accrual;
}

double repo_forward_rate(const RepoCurveView& view, double e) {
    const ModelParams& p = view.params();
    const double bond_fwd = view.bond_curve().forward(e);
    const double scale = p.rho * p.sigma * p.epsilon;
    if (scale == 0.0) return bond_fwd;
    if (p.theta == 0.0) {
        throw std::domain_error("repo_forward_rate: requires theta > 0");
    }
    const double x = e - view.bond_curve().valuation_time();
    return bond_fwd +
           scale * std::exp(-p.theta * x) * g_factor(p.kappa, x) / p.theta;
}

double extrapolate_repo_forward(const RepoCurveView& view, double e) {
    const double big_e = view.observation_horizon();
    if (!(e > big_e)) {
        throw std::invalid_argument(
            "extrapolate_repo_forward: e must exceed the observation horizon");
    }
    const double bond_fwd = view.bond_curve().forward(e);  // enforces bond span
    return bond_fwd + extrapolated_basis(view, anchor_basis(view), e);
}

DiscountCurve build_extrapolated_repo_curve(const RepoCurveView& view,
                                            const std::vector<double>& pillar_times) {
    const DiscountCurve& obs = view.observed_repo_curve();
    if (pillar_times.empty()) return obs;

    const DiscountCurve& bond = view.bond_curve();
    const double big_e = view.observation_horizon();
    double prev_time = big_e;
    for (double t : pillar_times) {
        if (!(t > prev_time)) {
            throw std::invalid_argument(
                "build_extrapolated_repo_curve: pillar times must increase beyond the "
                "observation horizon");
        }
        if (!(t <= bond.last_time())) {
            throw std::out_of_range(
                "build_extrapolated_repo_curve: pillar beyond the bond curve span");
        }
        prev_time = t;
    }

    const double anchor = anchor_basis(view);
    std::vector<CurvePillar> pillars = obs.pillars();
    double log_df = obs.log_df(big_e);
    double a = big_e;
    for (double b : pillar_times) {
        const double basis_mid = extrapolated_basis(view, anchor, 0.5 * (a + b));
        log_df += (bond.log_df(b) - bond.log_df(a)) - basis_mid * (b - a);
        pillars.push_back({b, std::exp(log_df)});
        a = b;
    }
    return DiscountCurve(obs.valuation_time(), std::move(pillars));
}

}  // namespace repoconv
