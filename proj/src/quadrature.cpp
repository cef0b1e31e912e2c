#include "repoconv/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace repoconv {

namespace {

constexpr int kOrder = 24;

struct GaussRule {
    std::array<double, kOrder> node{};    // on [-1, 1]
    std::array<double, kOrder> weight{};
};

// Nodes are the roots of the Legendre polynomial, found by Newton
// iteration from the Chebyshev initial guess.
GaussRule make_rule() {
    GaussRule rule;
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.node[i] = -x;
        rule.weight[i] = w;
        rule.node[n - 1 - i] = x;
        rule.weight[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b must be >= a");
    if (a == b) return 0.0;
    if (panels <= 0) {
        panels = static_cast<int>(std::ceil((b - a) / 2.0));
        if (panels < 1) panels = 1;
        if (panels > 256) panels = 256;
    }
    const GaussRule& r = rule();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < kOrder; ++i) {
            acc += r.weight[i] * f(mid + 0.5 * h * r.node[i]);
        }
        total += 0.5 * h * acc;
    }
    return total;
}

}  // namespace repoconv
