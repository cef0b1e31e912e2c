#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "repoconv/convexity.hpp"
#include "repoconv/mc_oracle.hpp"

using namespace repoconv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::fmax(std::fmax(std::fabs(a), std::fabs(b)), 1e-300);
}

}  // namespace

TEST_CASE("b_function zero-reversion limits (series-expansion values)") {
    // limit mu*(tau+delta)^2/2 - (delta+mu)*tau^2/2 - (delta+mu)*delta*tau
    CHECK(b_function(0.0, 2.0, 3.0, 0.0, 0.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(b_function(1.0, 1.0, 1.0, 0.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("b_function vs quadrature at the reference point") {
    // frozen reference computed by 40-digit quadrature of the covariance
    // integral: B(1, 0.25, 8.75; 0.03, 0.1)
    // the two lines of the closed form cancel by a factor ~120 here, so
    // ~2e-14 relative is the intrinsic double-precision limit
    const double frozen = 0.06153877430209366192;
    CHECK(rel_diff(b_function(1.0, 0.25, 8.75, 0.03, 0.1), frozen) < 1e-12);

    const ModelParams p{0.01, 0.005, 0.03, 0.1, -0.5};
    const RepoSchedule sched{0.0, 1.0, 1.25, 10.0, 0.25};
    const double via_quad = quadrature_covariance(p, sched) /
                            (p.rho * p.sigma * p.epsilon);
    CHECK(rel_diff(b_function(1.0, 0.25, 8.75, 0.03, 0.1), via_quad) < 1e-10);
}

TEST_CASE("b_function argument validation") {
    CHECK_THROWS_AS(b_function(-0.1, 1.0, 1.0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(b_function(0.0, 0.0, 1.0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(b_function(0.0, 1.0, -1.0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(b_function(0.0, 1.0, 1.0, -0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(b_function(0.0, 1.0, kInf, 0.0, 0.1), std::domain_error);
}

TEST_CASE("boundary identities are exact branches") {
    const ModelParams p{0.02, 0.01, 0.05, 0.2, 0.7};
    for (double t : {0.0, 0.5, 2.0}) {
        for (double delta : {0.25, 1.0}) {
            // C_ss^ee = 0
            const RepoSchedule spot{t, t, t + delta, t + delta, delta};
            CHECK(convexity_adjustment(p, spot) == 0.0);
            // M_t^ee = 0
            CHECK(maturity_adjustment(p, t, t + delta, t + delta) == 0.0);
            // F_tt^eT = 0
            CHECK(forwardness_adjustment(p, t, t, t + delta, t + 5.0) == 0.0);
        }
    }
}

TEST_CASE("convexity adjustment equals its decomposition") {
    const ModelParams p{0.012, 0.007, 0.04, 0.15, -0.6};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double t = 2.0 * u(rng);
        const double s = t + 3.0 * u(rng);
        const double e = s + 0.05 + u(rng);
        const double T = e + 10.0 * u(rng);
        const RepoSchedule sched{t, s, e, T, e - s};
        const double c = convexity_adjustment(p, sched);
        const double m_e = maturity_adjustment(p, t, e, T);
        const double m_s = maturity_adjustment(p, t, s, T);
        const double f = forwardness_adjustment(p, t, s, e, T);
        CHECK(std::fabs(c - ((m_e - m_s) + f)) < 1e-14);
    }
}

TEST_CASE("maturity adjustment: zero-reversion limit and sign") {
    const ModelParams p0{0.01, 0.005, 0.0, 0.0, 0.8};
    const double t = 0.5, e = 2.0, T = 7.0;
    const double limit = p0.rho * p0.sigma * p0.epsilon * (T - e) * (e - t) * (e - t) / 2.0;
    CHECK(rel_diff(maturity_adjustment(p0, t, e, T), limit) < 1e-12);

    const ModelParams p{0.01, 0.005, 0.03, 0.1, 0.8};
    CHECK(maturity_adjustment(p, t, e, T) > 0.0);
    CHECK_THROWS_AS(maturity_adjustment(p, 0.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("forwardness adjustment: zero-reversion limit and sign") {
    const ModelParams p0{0.01, 0.005, 0.0, 0.0, 0.8};
    const double t = 0.0, s = 1.5, e = 2.0, T = 9.0;
    const double limit = -p0.rho * p0.sigma * p0.epsilon * (T - s) * (e - s) * (s - t);
    CHECK(rel_diff(forwardness_adjustment(p0, t, s, e, T), limit) < 1e-12);

    const ModelParams p{0.01, 0.005, 0.03, 0.1, 0.8};
    CHECK(forwardness_adjustment(p, t, s, e, T) < 0.0);
    CHECK_THROWS_AS(forwardness_adjustment(p, 1.0, 0.5, 2.0, 9.0),
                    std::invalid_argument);
}

TEST_CASE("liquidity adjustment") {
    CHECK(liquidity_adjustment(0.0, 0.0) == 0.0);
    CHECK(liquidity_adjustment(0.001, 0.02) == doctest::Approx(0.0012).epsilon(1e-15));
    CHECK(liquidity_adjustment(-0.002, 0.0) == -0.002);
    CHECK_THROWS_AS(liquidity_adjustment(0.0, -0.1), std::invalid_argument);
}

TEST_CASE("compute_adjustments bundles and enforces the identity") {
    const ModelParams p{0.01, 0.005, 0.03, 0.1, -0.5};
    SUBCASE("all-zero case") {
        const ModelParams zero_rho{0.01, 0.005, 0.03, 0.1, 0.0};
        const Adjustments adj =
            compute_adjustments(zero_rho, {0.0, 1.0, 1.25, 10.0, 0.25});
        CHECK(adj.liquidity == 0.0);
        CHECK(adj.maturity_end == 0.0);
        CHECK(adj.maturity_start == 0.0);
        CHECK(adj.forwardness == 0.0);
        CHECK(adj.total == 0.0);
    }
    SUBCASE("spot start has zero forwardness") {
        const Adjustments adj = compute_adjustments(p, {1.0, 1.0, 1.5, 6.0, 0.5});
        CHECK(adj.forwardness == 0.0);
        CHECK(adj.total == doctest::Approx(adj.maturity_end - adj.maturity_start)
                               .epsilon(1e-14));
    }
    SUBCASE("generic decomposition residual") {
        const Adjustments adj =
            compute_adjustments(p, {0.0, 1.0, 1.25, 10.0, 0.25}, 0.001, 0.02);
        CHECK(adj.liquidity == doctest::Approx(0.0012));
        const double recombined =
            (adj.maturity_end - adj.maturity_start) + adj.forwardness;
        CHECK(std::fabs(adj.total - recombined) < 1e-14);
    }
}

TEST_CASE("bilinearity in rho, sigma, epsilon") {
    const RepoSchedule sched{0.25, 1.0, 1.5, 9.0, 0.5};
    const ModelParams p{0.01, 0.005, 0.06, 0.12, -0.25};
    const double c = convexity_adjustment(p, sched);
    ModelParams q = p;
    q.rho *= 2.0;
    CHECK(convexity_adjustment(q, sched) == 2.0 * c);
    q = p;
    q.sigma *= 2.0;
    CHECK(convexity_adjustment(q, sched) == 2.0 * c);
    q = p;
    q.epsilon *= 2.0;
    CHECK(convexity_adjustment(q, sched) == 2.0 * c);
}

TEST_CASE("continuity at singular parameters") {
    const RepoSchedule grid[] = {{0.0, 0.5, 1.0, 4.0, 0.5},
                                 {0.0, 0.0, 0.25, 10.0, 0.25},
                                 {1.0, 2.0, 2.5, 2.5, 0.5},
                                 {0.0, 3.0, 3.25, 20.0, 0.25}};
    for (const auto& sched : grid) {
        // theta -> 0
        CHECK(std::fabs(
                  convexity_adjustment({0.01, 0.005, 0.0, 0.1, -0.5}, sched) -
                  convexity_adjustment({0.01, 0.005, 1e-7, 0.1, -0.5}, sched)) < 1e-9);
        // kappa -> 0
        CHECK(std::fabs(
                  convexity_adjustment({0.01, 0.005, 0.03, 0.0, -0.5}, sched) -
                  convexity_adjustment({0.01, 0.005, 0.03, 1e-7, -0.5}, sched)) < 1e-9);
        // theta + kappa -> 0
        CHECK(std::fabs(
                  convexity_adjustment({0.01, 0.005, 0.0, 0.0, -0.5}, sched) -
                  convexity_adjustment({0.01, 0.005, 5e-8, 5e-8, -0.5}, sched)) < 1e-9);
    }
}

TEST_CASE("infinite bond maturity") {
    const ModelParams p{0.01, 0.005, 0.03, 0.1, -0.5};
    const RepoSchedule sched{0.0, 1.0, 1.25, kInf, 0.25};
    const double c = convexity_adjustment(p, sched);
    CHECK(std::isfinite(c));
    // the infinite-maturity value is the T -> infinity limit
    const RepoSchedule far{0.0, 1.0, 1.25, 1e7, 0.25};
    CHECK(rel_diff(c, convexity_adjustment(p, far)) < 1e-12);
    const ModelParams flat{0.01, 0.005, 0.0, 0.1, -0.5};
    CHECK_THROWS_AS(convexity_adjustment(flat, sched), std::domain_error);
    // zero correlation short-circuits before the divergent factor
    const ModelParams zero{0.01, 0.005, 0.0, 0.1, 0.0};
    CHECK(convexity_adjustment(zero, sched) == 0.0);
}

TEST_CASE("parameter validation") {
    ModelParams p{0.01, 0.005, 0.03, 0.1, -0.5};
    p.rho = -1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {-0.01, 0.005, 0.03, 0.1, 0.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    RepoSchedule s{0.0, 1.0, 0.5, 10.0, 0.25};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {0.0, 1.0, 1.25, 10.0, -0.25};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
