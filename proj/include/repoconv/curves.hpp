/**
 * @file curves.hpp
 * @brief Pillar-based discount curves with log-linear interpolation,
 *        piecewise-constant instantaneous forwards, and stripping from
 *        spot repo quotes.
 */

#pragma once

#include <span>
#include <vector>

namespace repoconv {

struct CurvePillar {
    double time;  // year fraction, strictly greater than valuation time
    double df;    // discount factor, > 0
};

/// A spot or forward repo quote: simple rate over [start, end] with a
/// supplied accrual fraction (never derived from the dates).
struct RepoQuote {
    double start;
    double end;
    double rate;     // simple rate per annum, decimal
    double accrual;  // year fraction delta

    void validate() const;
};

/// Immutable discount curve: ordered pillars (time, df) after an implicit
/// anchor pillar (valuation_time, 1).  df is interpolated log-linearly,
/// so the instantaneous forward is piecewise constant between pillars.
///
/// Queries beyond the last pillar throw; the repo-curve extrapolation in
/// repo_pricing is the only sanctioned extrapolation.
class DiscountCurve {
public:
    /// Builds a curve from pillars with strictly increasing times and
    /// positive dfs.  A leading pillar at valuation_time must carry
    /// df = 1 and is folded into the anchor.  Throws std::invalid_argument
    /// on any violation.
    DiscountCurve(double valuation_time, std::vector<CurvePillar> pillars);

    double valuation_time() const { return valuation_time_; }

    /// Time of the last pillar; equals valuation_time() for an empty curve.
    double last_time() const;

    bool empty() const { return pillars_.empty(); }

    /// Discount factor at `time` in [valuation_time, last_time].
    double df(double time) const;

    double log_df(double time) const;

    /// Instantaneous forward at `time`.  At an interior pillar the
    /// right-hand interval applies; at the last pillar the left-hand one.
    double forward(double time) const;

    /// Forward of the segment ending at the last pillar.
    double last_segment_forward() const;

    const std::vector<CurvePillar>& pillars() const { return pillars_; }

private:
    std::size_t segment_index(double time) const;  // right-pillar index

    double valuation_time_ = 0.0;
    std::vector<CurvePillar> pillars_;   // excludes the anchor
    std::vector<double> log_dfs_;
};

/// Convenience factory mirroring the constructor.
DiscountCurve build_curve(double valuation_time, std::vector<CurvePillar> pillars);

/// Flat curve df(x) = exp(-rate (x - valuation_time)) with pillars at the
/// given times.
DiscountCurve flat_curve(double valuation_time, double rate,
                         std::vector<double> times);

/// Inverts spot-starting repo quotes into a discount curve:
/// df(end) = 1 / (1 + rate * accrual) for each quote.  All quotes must
/// start at the common valuation time and have distinct end dates.
DiscountCurve strip_bond_curve_from_spot_repos(std::span<const RepoQuote> quotes);

}  // namespace repoconv
