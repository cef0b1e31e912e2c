/**
 * @file csv_io.hpp
 * @brief CSV formats: curves as `time,df` rows, quotes as
 *        `start,end,rate,accrual` rows.  Curves read from CSV are valued
 *        at time 0; an optional leading `0,1` row is accepted.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "repoconv/curves.hpp"

namespace repoconv {

DiscountCurve read_curve_csv(std::istream& in, const std::string& name = "curve");
DiscountCurve read_curve_csv_file(const std::string& path);

/// Writes the anchor row `0,1` followed by one row per pillar, full
/// double precision.
std::string write_curve_csv(const DiscountCurve& curve);

std::vector<RepoQuote> read_quote_csv(std::istream& in,
                                      const std::string& name = "quotes");
std::vector<RepoQuote> read_quote_csv_file(const std::string& path);

}  // namespace repoconv
