#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "repoconv/csv_io.hpp"
#include "repoconv/curves.hpp"
#include "repoconv/repo_pricing.hpp"

using namespace repoconv;

TEST_CASE("pillar reproduction and basic queries") {
    const DiscountCurve curve(0.0, {{1.0, 0.97}, {2.0, 0.94}});
    CHECK(curve.df(1.0) == 0.97);
    CHECK(curve.df(2.0) == 0.94);
    CHECK(curve.df(0.0) == 1.0);
    CHECK(curve.last_time() == 2.0);
}

TEST_CASE("log-linear interpolation between pillars") {
    const DiscountCurve curve(0.0, {{1.0, 0.98}, {3.0, 0.90}});
    CHECK(curve.df(2.0) ==
          doctest::Approx(std::exp(0.5 * (std::log(0.98) + std::log(0.90))))
              .epsilon(1e-15));
}

TEST_CASE("degenerate empty curve") {
    const DiscountCurve curve(0.0, {});
    CHECK(curve.df(0.0) == 1.0);
    CHECK_THROWS_AS(curve.df(0.5), std::out_of_range);
    CHECK_THROWS_AS(curve.forward(0.0), std::out_of_range);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(DiscountCurve(0.0, {{2.0, 0.9}, {1.0, 0.95}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiscountCurve(0.0, {{1.0, 0.95}, {1.0, 0.94}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DiscountCurve(0.0, {{1.0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscountCurve(0.0, {{0.0, 0.99}}), std::invalid_argument);
    CHECK_NOTHROW(DiscountCurve(0.0, {{0.0, 1.0}, {1.0, 0.99}}));  // explicit anchor
}

TEST_CASE("queries outside the span throw") {
    const DiscountCurve curve(0.0, {{1.0, 0.98}});
    CHECK_THROWS_AS(curve.df(1.5), std::out_of_range);
    CHECK_THROWS_AS(curve.df(-0.5), std::out_of_range);
    CHECK_THROWS_AS(curve.forward(1.5), std::out_of_range);
}

TEST_CASE("instantaneous forward on a flat curve") {
    std::vector<CurvePillar> pillars;
    for (int i = 1; i <= 10; ++i) pillars.push_back({double(i), std::exp(-0.02 * i)});
    const DiscountCurve curve(0.0, std::move(pillars));
    for (double t : {0.0, 0.4, 1.0, 3.7, 9.5, 10.0}) {
        CHECK(curve.forward(t) == doctest::Approx(0.02).epsilon(1e-13));
    }
}

TEST_CASE("instantaneous forward: hand-evaluated interval value") {
    const DiscountCurve curve(0.0, {{1.0, 0.98}, {2.0, 0.95}});
    CHECK(curve.forward(1.5) ==
          doctest::Approx(std::log(0.98 / 0.95)).epsilon(1e-15));
    // interior pillar takes the right-hand interval
    CHECK(curve.forward(1.0) == curve.forward(1.5));
    // the last pillar takes the left-hand interval
    CHECK(curve.forward(2.0) == curve.forward(1.5));
    CHECK(curve.forward(0.5) == doctest::Approx(-std::log(0.98)).epsilon(1e-15));
}

TEST_CASE("forward/df consistency: interval-wise integral reproduces df ratios") {
    const DiscountCurve curve(0.0, {{0.5, 0.995}, {1.0, 0.985}, {2.5, 0.96},
                                    {4.0, 0.93}, {7.0, 0.85}});
    const auto& pillars = curve.pillars();
    double integral = 0.0;
    double prev = 0.0;
    for (const auto& p : pillars) {
        integral += curve.forward(0.5 * (prev + p.time)) * (p.time - prev);
        const double lhs = std::exp(-integral);
        const double rhs = curve.df(p.time) / curve.df(0.0);
        CHECK(std::fabs(lhs - rhs) <= 1e-14 * rhs);
        prev = p.time;
    }
}

TEST_CASE("stripping spot quotes") {
    SUBCASE("direct inversion") {
        const std::vector<RepoQuote> quotes = {{0.0, 1.0, 0.03, 1.0}};
        const DiscountCurve curve = strip_bond_curve_from_spot_repos(quotes);
        CHECK(curve.df(1.0) == doctest::Approx(1.0 / 1.03).epsilon(1e-16));
    }
    SUBCASE("zero rate") {
        const std::vector<RepoQuote> quotes = {{0.0, 0.5, 0.0, 0.5}};
        const DiscountCurve curve = strip_bond_curve_from_spot_repos(quotes);
        CHECK(curve.df(0.5) == 1.0);
    }
    SUBCASE("duplicate ends rejected") {
        const std::vector<RepoQuote> quotes = {{0.0, 1.0, 0.03, 1.0},
                                               {0.0, 1.0, 0.02, 1.0}};
        CHECK_THROWS_AS(strip_bond_curve_from_spot_repos(quotes),
                        std::invalid_argument);
    }
    SUBCASE("mixed starts rejected") {
        const std::vector<RepoQuote> quotes = {{0.0, 1.0, 0.03, 1.0},
                                               {0.5, 1.5, 0.02, 1.0}};
        CHECK_THROWS_AS(strip_bond_curve_from_spot_repos(quotes),
                        std::invalid_argument);
    }
    SUBCASE("df must stay positive") {
        const std::vector<RepoQuote> quotes = {{0.0, 1.0, -2.0, 1.0}};
        CHECK_THROWS_AS(strip_bond_curve_from_spot_repos(quotes),
                        std::invalid_argument);
    }
}

TEST_CASE("strip round-trip: rates generated from a known curve recover its dfs") {
    const DiscountCurve known(0.0, {{0.5, 0.99}, {1.0, 0.979}, {2.0, 0.953},
                                    {5.0, 0.88}, {10.0, 0.74}});
    const RepoCurveView view(known, ModelParams{0.01, 0.005, 0.03, 0.1, -0.4});
    std::vector<RepoQuote> quotes;
    for (const auto& p : known.pillars()) {
        // spot repo to maturity: rate depends on the bond df alone
        const RepoSchedule sched{0.0, 0.0, p.time, p.time, p.time};
        quotes.push_back({0.0, p.time, repo_rate(view, sched), p.time});
    }
    const DiscountCurve stripped = strip_bond_curve_from_spot_repos(quotes);
    for (const auto& p : known.pillars()) {
        CHECK(std::fabs(stripped.df(p.time) - p.df) <= 1e-12 * p.df);
    }
}

TEST_CASE("curve CSV round trip") {
    const DiscountCurve curve(0.0, {{0.5, 0.99}, {1.0, 0.9785}, {2.0, 0.953123456789}});
    const std::string text = write_curve_csv(curve);
    std::istringstream in(text);
    const DiscountCurve back = read_curve_csv(in);
    REQUIRE(back.pillars().size() == curve.pillars().size());
    for (std::size_t i = 0; i < curve.pillars().size(); ++i) {
        CHECK(back.pillars()[i].time == curve.pillars()[i].time);
        CHECK(back.pillars()[i].df == curve.pillars()[i].df);
    }
}

TEST_CASE("curve CSV validation") {
    std::istringstream bad_header("t,df\n1,0.99\n");
    CHECK_THROWS_AS(read_curve_csv(bad_header), std::runtime_error);
    std::istringstream bad_field("time,df\n1,abc\n");
    CHECK_THROWS_AS(read_curve_csv(bad_field), std::runtime_error);
    std::istringstream bad_order("time,df\n2,0.9\n1,0.95\n");
    CHECK_THROWS_AS(read_curve_csv(bad_order), std::invalid_argument);
}

TEST_CASE("quote CSV parsing") {
    std::istringstream in("start,end,rate,accrual\n0,0.5,0.021,0.5\n0,1,0.023,1\n");
    const auto quotes = read_quote_csv(in);
    REQUIRE(quotes.size() == 2);
    CHECK(quotes[1].rate == 0.023);
    std::istringstream bad("start,end,rate,accrual\n1,0.5,0.02,0.5\n");
    CHECK_THROWS_AS(read_quote_csv(bad), std::invalid_argument);
}
