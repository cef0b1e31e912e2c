#include "repoconv/ou_math.hpp"

#include <cmath>
#include <stdexcept>

namespace repoconv {

namespace {

// exp(-z) underflows to zero below this; also guards inf*0 when x = inf.
constexpr double kExpFloor = 745.0;

// Series/closed-form switch for tail_moment and g_moment_integral.
constexpr double kSeriesThreshold = 1.0;

// Divided-difference switch, per the small-parameter-times-horizon rule.
constexpr double kDifferenceThreshold = 1e-4;

// Switch for the product integral (larger because its closed form
// cancels twice).
constexpr double kProductThreshold = 0.5;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void check_rate_and_horizon(double a, double x) {
    if (!(a >= 0.0)) throw std::invalid_argument("ou_math: rate must be >= 0");
    if (!(x >= 0.0)) throw std::invalid_argument("ou_math: horizon must be >= 0");
}

}  // namespace

double g_factor(double a, double x) {
    check_rate_and_horizon(a, x);
    if (a == 0.0) return x;
    return -std::expm1(-a * x) / a;
}

double tail_moment(int n, double a, double x) {
    check_rate_and_horizon(a, x);
    if (n < 0) throw std::invalid_argument("tail_moment: n must be >= 0");
    const double z = a * x;
    if (a == 0.0 || z < kSeriesThreshold) {
        // sum_k (-a)^k x^{n+k+1} / (k! (n+k+1))
        double sum = std::pow(x, n + 1) / (n + 1);
        double term = std::pow(x, n + 1);
        for (int k = 1; k < 32; ++k) {
            term *= -a * x / k;
            const double c = term / (n + k + 1);
            sum += c;
            if (std::fabs(c) <= 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    if (z >= kExpFloor) return factorial(n) / std::pow(a, n + 1);
    // n! (1 - e^{-z} sum_{k<=n} z^k/k!) / a^{n+1}
    double poly = 1.0;
    double zk = 1.0;
    for (int k = 1; k <= n; ++k) {
        zk *= z / k;
        poly += zk;
    }
    return factorial(n) * (1.0 - std::exp(-z) * poly) / std::pow(a, n + 1);
}

double g_difference(double a, double b, double x) {
    check_rate_and_horizon(a, x);
    if (!(b >= 0.0)) throw std::invalid_argument("g_difference: rate must be >= 0");
    if (b == 0.0 || b * x < kDifferenceThreshold) {
        return tail_moment(1, a, x) - 0.5 * b * tail_moment(2, a, x) +
               (b * b / 6.0) * tail_moment(3, a, x) -
               (b * b * b / 24.0) * tail_moment(4, a, x);
    }
    // The subtraction loses ~b*x leading digits, and this difference sits
    // under a 1/b prefactor in every adjustment; extended precision keeps
    // the result at full double accuracy down to the series threshold.
    const long double al = a;
    const long double bl = b;
    const long double xl = x;
    const long double ga = al == 0.0L ? xl : -std::expm1l(-al * xl) / al;
    const long double gab = -std::expm1l(-(al + bl) * xl) / (al + bl);
    return static_cast<double>((ga - gab) / bl);
}

double g_moment_integral(int n, double a, double x) {
    check_rate_and_horizon(a, x);
    if (n < 0) throw std::invalid_argument("g_moment_integral: n must be >= 0");
    const double z = a * x;
    if (a == 0.0 || z < kSeriesThreshold) {
        // sum_{k>=1} (-1)^{k+1} a^{k-1} x^{n+k+1} / (k! (n+k+1))
        double term = std::pow(x, n + 2);
        double sum = term / (n + 2);
        for (int k = 2; k < 32; ++k) {
            term *= -a * x / k;
            const double c = term / (n + k + 1);
            sum += c;
            if (std::fabs(c) <= 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    return (std::pow(x, n + 1) / (n + 1) - tail_moment(n, a, x)) / a;
}

double g_product_integral(double a, double b, double x) {
    check_rate_and_horizon(a, x);
    if (!(b >= 0.0)) throw std::invalid_argument("g_product_integral: rate must be >= 0");
    if (a < b) std::swap(a, b);
    if (b == 0.0 || b * x < kProductThreshold) {
        // expand the slower factor: sum_m (-b)^m/(m+1)! * g_moment_integral(m+1, a, x)
        double coef = 1.0;
        double sum = g_moment_integral(1, a, x);
        for (int m = 1; m < 24; ++m) {
            coef *= -b / (m + 1);
            const double c = coef * g_moment_integral(m + 1, a, x);
            sum += c;
            if (std::fabs(c) <= 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    return (x - g_factor(a, x) - g_factor(b, x) + g_factor(a + b, x)) / (a * b);
}

}  // namespace repoconv
