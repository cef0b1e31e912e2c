#include "repoconv/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace repoconv {

void RepoQuote::validate() const {
    if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(rate) ||
        !std::isfinite(accrual)) {
        throw std::invalid_argument("RepoQuote: fields must be finite");
    }
    if (!(start < end)) throw std::invalid_argument("RepoQuote: start must precede end");
    if (!(accrual > 0.0)) throw std::invalid_argument("RepoQuote: accrual must be > 0");
    if (!(1.0 + rate * accrual > 0.0)) {
        throw std::invalid_argument("RepoQuote: 1 + rate*accrual must be > 0");
    }
}

DiscountCurve::DiscountCurve(double valuation_time, std::vector<CurvePillar> pillars)
    : valuation_time_(valuation_time), pillars_(std::move(pillars)) {
    if (!std::isfinite(valuation_time_)) {
        throw std::invalid_argument("DiscountCurve: valuation time must be finite");
    }
    if (!pillars_.empty() && pillars_.front().time == valuation_time_) {
        if (pillars_.front().df != 1.0) {
            throw std::invalid_argument(
                "DiscountCurve: df at valuation time must equal 1");
        }
        pillars_.erase(pillars_.begin());
    }
    double prev = valuation_time_;
    for (const auto& p : pillars_) {
        if (!std::isfinite(p.time) || !std::isfinite(p.df)) {
            throw std::invalid_argument("DiscountCurve: pillar fields must be finite");
        }
        if (!(p.time > prev)) {
            throw std::invalid_argument(
                "DiscountCurve: pillar times must be strictly increasing from the "
                "valuation time");
        }
        if (!(p.df > 0.0)) {
            throw std::invalid_argument("DiscountCurve: discount factors must be > 0");
        }
        prev = p.time;
    }
    log_dfs_.reserve(pillars_.size());
    for (const auto& p : pillars_) log_dfs_.push_back(std::log(p.df));
}

double DiscountCurve::last_time() const {
    return pillars_.empty() ? valuation_time_ : pillars_.back().time;
}

std::size_t DiscountCurve::segment_index(double time) const {
    // first pillar with pillar.time >= time
    const auto it = std::lower_bound(
        pillars_.begin(), pillars_.end(), time,
        [](const CurvePillar& p, double t) { return p.time < t; });
    return static_cast<std::size_t>(it - pillars_.begin());
}

double DiscountCurve::log_df(double time) const {
    if (!(time >= valuation_time_) || !(time <= last_time())) {
        throw std::out_of_range("DiscountCurve: query outside [valuation, last pillar]");
    }
    if (time == valuation_time_) return 0.0;
    const std::size_t i = segment_index(time);
    const double t1 = pillars_[i].time;
    const double l1 = log_dfs_[i];
    if (time == t1) return l1;
    const double t0 = (i == 0) ? valuation_time_ : pillars_[i - 1].time;
    const double l0 = (i == 0) ? 0.0 : log_dfs_[i - 1];
    const double w = (time - t0) / (t1 - t0);
    return l0 + w * (l1 - l0);
}

double DiscountCurve::df(double time) const {
    if (time == valuation_time_) return 1.0;
    const double t_last = last_time();
    if (time == t_last && !pillars_.empty()) return pillars_.back().df;
    if (time >= valuation_time_ && time < t_last) {
        const std::size_t i = segment_index(time);
        if (time == pillars_[i].time) return pillars_[i].df;
    }
    return std::exp(log_df(time));
}

double DiscountCurve::forward(double time) const {
    if (pillars_.empty()) {
        throw std::out_of_range("DiscountCurve: no pillar interval for forward");
    }
    if (!(time >= valuation_time_) || !(time <= last_time())) {
        throw std::out_of_range("DiscountCurve: forward query outside curve span");
    }
    std::size_t i = segment_index(time);
    if (i < pillars_.size() && time == pillars_[i].time && i + 1 < pillars_.size()) {
        ++i;  // interior pillar: right-hand interval
    }
    if (i >= pillars_.size()) i = pillars_.size() - 1;
    const double t0 = (i == 0) ? valuation_time_ : pillars_[i - 1].time;
    const double l0 = (i == 0) ? 0.0 : log_dfs_[i - 1];
    return -(log_dfs_[i] - l0) / (pillars_[i].time - t0);
}

double DiscountCurve::last_segment_forward() const {
    if (pillars_.empty()) {
        throw std::out_of_range("DiscountCurve: no pillar interval for forward");
    }
    const std::size_t i = pillars_.size() - 1;
    const double t0 = (i == 0) ? valuation_time_ : pillars_[i - 1].time;
    const double l0 = (i == 0) ? 0.0 : log_dfs_[i - 1];
    return -(log_dfs_[i] - l0) / (pillars_[i].time - t0);
}

DiscountCurve build_curve(double valuation_time, std::vector<CurvePillar> pillars) {
    return DiscountCurve(valuation_time, std::move(pillars));
}

DiscountCurve flat_curve(double valuation_time, double rate,
                         std::vector<double> times) {
    std::vector<CurvePillar> pillars;
    pillars.reserve(times.size());
    for (double t : times) {
        pillars.push_back({t, std::exp(-rate * (t - valuation_time))});
    }
    return DiscountCurve(valuation_time, std::move(pillars));
}

DiscountCurve strip_bond_curve_from_spot_repos(std::span<const RepoQuote> quotes) {
    if (quotes.empty()) {
        throw std::invalid_argument("strip: at least one quote is required");
    }
    const double valuation_time = quotes.front().start;
    std::vector<CurvePillar> pillars;
    pillars.reserve(quotes.size());
    for (const auto& q : quotes) {
        q.validate();
        if (q.start != valuation_time) {
            throw std::invalid_argument("strip: quotes must share a common spot start");
        }
        const double df = 1.0 / (1.0 + q.rate * q.accrual);
        if (!(df > 0.0) || !std::isfinite(df)) {
            throw std::invalid_argument("strip: quote implies non-positive df");
        }
        pillars.push_back({q.end, df});
    }
    std::sort(pillars.begin(), pillars.end(),
              [](const CurvePillar& a, const CurvePillar& b) { return a.time < b.time; });
    for (std::size_t i = 1; i < pillars.size(); ++i) {
        if (pillars[i].time == pillars[i - 1].time) {
            throw std::invalid_argument("strip: duplicate quote end date " +
                                        std::to_string(pillars[i].time));
        }
    }
    return DiscountCurve(valuation_time, std::move(pillars));
}

}  // namespace repoconv
