#include "repoconv/mc_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "repoconv/ou_math.hpp"
#include "repoconv/quadrature.hpp"

namespace repoconv {

namespace {

constexpr std::uint64_t kChunkPaths = 4096;  // fixed accumulation unit

double variance_integral(const ModelParams& p, double x) {
    return p.sigma * p.sigma * g_product_integral(p.theta, p.theta, x);
}

double variance_integral_sum(const ModelParams& p, double x) {
    // Var of the integrated sum of both factors over [0, x].
    return variance_integral(p, x) +
           p.epsilon * p.epsilon * g_product_integral(p.kappa, p.kappa, x) +
           2.0 * p.rho * p.sigma * p.epsilon * g_product_integral(p.theta, p.kappa, x);
}

// ---------------------------------------------------------------------------
// counter-based per-path RNG: a SplitMix64 stream keyed by (seed, path)
// ---------------------------------------------------------------------------

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path)
        : state_(mix64(seed + 0x9E3779B97F4A7C15ull) ^
                 mix64((path + 1) * 0xD1B54A32D192ED03ull)) {}

    double uniform_open() {  // in (0, 1]
        state_ += 0x9E3779B97F4A7C15ull;
        return static_cast<double>((mix64(state_) >> 11) + 1) * 0x1.0p-53;
    }

    void normal_pair(double& z1, double& z2) {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z1 = r * std::cos(2.0 * M_PI * u2);
        z2 = r * std::sin(2.0 * M_PI * u2);
    }

    std::array<double, 4> normal4() {
        std::array<double, 4> z{};
        normal_pair(z[0], z[1]);
        normal_pair(z[2], z[3]);
        return z;
    }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// deterministic chunked accumulation with pairwise reduction
// ---------------------------------------------------------------------------

template <int K>
struct MomentSums {
    double count = 0.0;
    std::array<double, K> sum{};                  // of (x - center)
    std::array<double, K*(K + 1) / 2> cross{};    // upper triangle of products

    void add(const std::array<double, K>& x) {
        count += 1.0;
        int c = 0;
        for (int i = 0; i < K; ++i) {
            sum[i] += x[i];
            for (int j = i; j < K; ++j) cross[c++] += x[i] * x[j];
        }
    }

    void merge(const MomentSums& o) {
        count += o.count;
        for (int i = 0; i < K; ++i) sum[i] += o.sum[i];
        for (std::size_t i = 0; i < cross.size(); ++i) cross[i] += o.cross[i];
    }
};

template <int K>
MomentSums<K> pairwise_reduce(std::vector<MomentSums<K>>& parts, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    MomentSums<K> left = pairwise_reduce(parts, lo, mid);
    left.merge(pairwise_reduce(parts, mid, hi));
    return left;
}

// Runs `observe(path, out)` over all paths with fixed chunking so that the
// reduction is independent of block size and thread count.
template <int K, typename Observe>
MomentSums<K> run_paths(const SimConfig& config, std::array<double, K>& center,
                        const Observe& observe) {
    std::array<double, K> c{};
    observe(0, c);
    center = c;

    const std::uint64_t n = config.n_paths;
    const std::size_t n_chunks = static_cast<std::size_t>((n + kChunkPaths - 1) / kChunkPaths);
    std::vector<MomentSums<K>> parts(n_chunks);

    const std::uint64_t chunks_per_unit =
        std::max<std::uint64_t>(1, config.block_size / kChunkPaths);
    std::atomic<std::size_t> next_unit{0};

    auto worker = [&]() {
        std::array<double, K> x{};
        for (;;) {
            const std::size_t unit = next_unit.fetch_add(1);
            const std::size_t first_chunk = unit * chunks_per_unit;
            if (first_chunk >= n_chunks) break;
            const std::size_t last_chunk =
                std::min<std::size_t>(first_chunk + chunks_per_unit, n_chunks);
            for (std::size_t chunk = first_chunk; chunk < last_chunk; ++chunk) {
                MomentSums<K>& ms = parts[chunk];
                const std::uint64_t begin = chunk * kChunkPaths;
                const std::uint64_t end = std::min<std::uint64_t>(begin + kChunkPaths, n);
                for (std::uint64_t path = begin; path < end; ++path) {
                    observe(path, x);
                    for (int i = 0; i < K; ++i) x[i] -= center[i];
                    ms.add(x);
                }
            }
        }
    };

    unsigned n_threads = config.n_threads;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>(n_threads, std::max<std::size_t>(n_chunks, 1)));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return pairwise_reduce<K>(parts, 0, n_chunks);
}

template <int K>
struct Moments {
    std::array<double, K> mean{};
    std::array<std::array<double, K>, K> cov{};  // sample covariance
    double count = 0.0;
};

template <int K>
Moments<K> finish(const MomentSums<K>& ms, const std::array<double, K>& center) {
    Moments<K> m;
    m.count = ms.count;
    for (int i = 0; i < K; ++i) m.mean[i] = center[i] + ms.sum[i] / ms.count;
    int c = 0;
    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) {
            double cov;
            if (ms.count < 2.0) {
                cov = std::numeric_limits<double>::infinity();
            } else {
                cov = (ms.cross[c] - ms.sum[i] * ms.sum[j] / ms.count) / (ms.count - 1.0);
            }
            m.cov[i][j] = m.cov[j][i] = cov;
            ++c;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// path generator: terminal draw or exact transition steps
// ---------------------------------------------------------------------------

struct PathState {
    double x_s;       // bond factor at the period start
    double x_e;       // bond factor at the period end
    double int_x;     // integral of the bond factor over [0, e]
    double int_y;     // integral of the basis factor over [0, e]
};

class PathGenerator {
public:
    PathGenerator(const ModelParams& params, double s, double e, int n_steps,
                  std::uint64_t seed, bool antithetic)
        : params_(params), s_(s), e_(e), n_steps_(n_steps), seed_(seed),
          antithetic_(antithetic) {
        if (n_steps_ <= 1) {
            n_steps_ = 1;
            chol_terminal_ = detail::cholesky_psd(detail::terminal_covariance(params, s, e));
        } else {
            h1_ = s / n_steps_;
            h2_ = (e - s) / n_steps_;
            if (s > 0.0) {
                chol_step1_ = detail::cholesky_psd(detail::step_noise_covariance(params, h1_));
            }
            chol_step2_ = detail::cholesky_psd(detail::step_noise_covariance(params, h2_));
        }
    }

    PathState generate(std::uint64_t path) const {
        PathRng rng(seed_, path);
        return generate_one(rng, +1.0);
    }

    /// Mirrored draw pair sharing one substream; the caller averages the
    /// observables (not the states), which is what antithetic sampling means
    /// for nonlinear payoffs.
    std::pair<PathState, PathState> generate_pair(std::uint64_t path) const {
        PathRng rng1(seed_, path);
        PathRng rng2(seed_, path);
        return {generate_one(rng1, +1.0), generate_one(rng2, -1.0)};
    }

    bool antithetic() const { return antithetic_; }

private:
    PathState generate_one(PathRng& rng, double sign) const {
        if (n_steps_ == 1) {
            const auto z = rng.normal4();
            std::array<double, 4> y{};
            for (int i = 0; i < 4; ++i) {
                double acc = 0.0;
                for (int j = 0; j <= i; ++j) acc += chol_terminal_[i][j] * z[j];
                y[i] = sign * acc;
            }
            return {y[0], y[1], y[2], y[3]};
        }
        const double th = params_.theta;
        const double ka = params_.kappa;
        double x = 0.0, yb = 0.0, int_x = 0.0, int_y = 0.0, x_s = 0.0;
        auto advance = [&](const detail::Mat4& chol, double h, int steps) {
            const double dx = std::exp(-th * h);
            const double dy = std::exp(-ka * h);
            const double gx = g_factor(th, h);
            const double gy = g_factor(ka, h);
            for (int k = 0; k < steps; ++k) {
                const auto z = rng.normal4();
                std::array<double, 4> n{};
                for (int i = 0; i < 4; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j <= i; ++j) acc += chol[i][j] * z[j];
                    n[i] = sign * acc;
                }
                int_x += x * gx + n[2];
                int_y += yb * gy + n[3];
                x = x * dx + n[0];
                yb = yb * dy + n[1];
            }
        };
        if (s_ > 0.0) advance(chol_step1_, h1_, n_steps_);
        x_s = x;
        advance(chol_step2_, h2_, n_steps_);
        return {x_s, x, int_x, int_y};
    }

    ModelParams params_;
    double s_;
    double e_;
    int n_steps_;
    std::uint64_t seed_;
    bool antithetic_;
    double h1_ = 0.0;
    double h2_ = 0.0;
    detail::Mat4 chol_terminal_{};
    detail::Mat4 chol_step1_{};
    detail::Mat4 chol_step2_{};
};

}  // namespace

// ---------------------------------------------------------------------------
// covariance entries
// ---------------------------------------------------------------------------

namespace detail {

Mat4 terminal_covariance(const ModelParams& p, double s, double e) {
    if (!(0.0 <= s && s <= e)) {
        throw std::invalid_argument("terminal_covariance: need 0 <= s <= e");
    }
    const double th = p.theta;
    const double ka = p.kappa;
    const double s2 = p.sigma * p.sigma;
    const double e2 = p.epsilon * p.epsilon;
    const double se = p.rho * p.sigma * p.epsilon;
    const double gap = e - s;

    Mat4 a{};
    a[0][0] = s2 * g_factor(2.0 * th, s);
    a[1][1] = s2 * g_factor(2.0 * th, e);
    a[0][1] = s2 * std::exp(-th * gap) * g_factor(2.0 * th, s);
    a[0][2] = s2 * (g_difference(th, th, s) + g_factor(th, gap) * g_factor(2.0 * th, s));
    a[1][2] = s2 * g_difference(th, th, e);
    a[0][3] = se * (g_difference(th, ka, s) + g_factor(th + ka, s) * g_factor(ka, gap));
    a[1][3] = se * g_difference(th, ka, e);
    a[2][2] = s2 * g_product_integral(th, th, e);
    a[3][3] = e2 * g_product_integral(ka, ka, e);
    a[2][3] = se * g_product_integral(th, ka, e);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) a[i][j] = a[j][i];
    }
    return a;
}

Mat4 step_noise_covariance(const ModelParams& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step_noise_covariance: need h > 0");
    const double th = p.theta;
    const double ka = p.kappa;
    const double s2 = p.sigma * p.sigma;
    const double e2 = p.epsilon * p.epsilon;
    const double se = p.rho * p.sigma * p.epsilon;

    Mat4 a{};
    a[0][0] = s2 * g_factor(2.0 * th, h);
    a[1][1] = e2 * g_factor(2.0 * ka, h);
    a[0][1] = se * g_factor(th + ka, h);
    a[0][2] = s2 * g_difference(th, th, h);
    a[1][2] = se * g_difference(ka, th, h);
    a[0][3] = se * g_difference(th, ka, h);
    a[1][3] = e2 * g_difference(ka, ka, h);
    a[2][2] = s2 * g_product_integral(th, th, h);
    a[3][3] = e2 * g_product_integral(ka, ka, h);
    a[2][3] = se * g_product_integral(th, ka, h);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) a[i][j] = a[j][i];
    }
    return a;
}

Mat4 cholesky_psd(const Mat4& a) {
    Mat4 l{};
    for (int i = 0; i < 4; ++i) {
        double d = a[i][i];
        for (int k = 0; k < i; ++k) d -= l[i][k] * l[i][k];
        if (!(d > 1e-14 * std::fabs(a[i][i]))) {
            // deterministic (or numerically dependent) component
            for (int j = i; j < 4; ++j) l[j][i] = 0.0;
            continue;
        }
        l[i][i] = std::sqrt(d);
        for (int j = i + 1; j < 4; ++j) {
            double v = a[j][i];
            for (int k = 0; k < i; ++k) v -= l[j][k] * l[i][k];
            l[j][i] = v / l[i][i];
        }
    }
    return l;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

void SimConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("SimConfig: n_paths must be >= 1");
    if (block_size < 1) throw std::invalid_argument("SimConfig: block_size must be >= 1");
    if (n_steps < 1) throw std::invalid_argument("SimConfig: n_steps must be >= 1");
}

double ShiftFunctions::bond_integral(double x) const {
    if (!(x >= valuation_time)) {
        throw std::out_of_range("ShiftFunctions: query before valuation time");
    }
    double acc = 0.0;
    double prev = valuation_time;
    for (std::size_t i = 0; i < bond_shift.size(); ++i) {
        const double hi = times[i];
        if (x <= hi) return acc + bond_shift[i] * (x - prev);
        acc += bond_shift[i] * (hi - prev);
        prev = hi;
    }
    if (x > prev) throw std::out_of_range("ShiftFunctions: query beyond bond span");
    return acc;
}

double ShiftFunctions::basis_integral(double x) const {
    if (!(x >= valuation_time)) {
        throw std::out_of_range("ShiftFunctions: query before valuation time");
    }
    double acc = 0.0;
    double prev = valuation_time;
    for (std::size_t i = 0; i < basis_shift.size(); ++i) {
        const double hi = times[i];
        if (x <= hi) return acc + basis_shift[i] * (x - prev);
        acc += basis_shift[i] * (hi - prev);
        prev = hi;
    }
    if (x > prev) throw std::out_of_range("ShiftFunctions: query beyond basis span");
    return acc;
}

ShiftFunctions calibrate_shifts(const DiscountCurve& bond_curve,
                                const DiscountCurve& derivative_curve,
                                const ModelParams& params) {
    params.validate();
    if (bond_curve.empty() || derivative_curve.empty()) {
        throw std::invalid_argument("calibrate_shifts: curves must have pillars");
    }
    if (bond_curve.valuation_time() != derivative_curve.valuation_time()) {
        throw std::invalid_argument("calibrate_shifts: curves must share valuation time");
    }
    if (derivative_curve.last_time() > bond_curve.last_time()) {
        throw std::invalid_argument(
            "calibrate_shifts: derivative span must not exceed the bond span");
    }

    const double t0 = bond_curve.valuation_time();
    std::vector<double> grid;
    for (const auto& p : bond_curve.pillars()) grid.push_back(p.time);
    for (const auto& p : derivative_curve.pillars()) grid.push_back(p.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    ShiftFunctions shifts;
    shifts.valuation_time = t0;
    shifts.times = grid;

    double prev = t0;
    double var_prev = 0.0;
    double var_sum_prev = 0.0;
    const double deriv_last = derivative_curve.last_time();
    for (double t : grid) {
        const double dt = t - prev;
        const double fwd_bond = -(bond_curve.log_df(t) - bond_curve.log_df(prev)) / dt;
        const double var = variance_integral(params, t - t0);
        shifts.bond_shift.push_back(fwd_bond + 0.5 * (var - var_prev) / dt);
        if (t <= deriv_last) {
            const double fwd_deriv =
                -(derivative_curve.log_df(t) - derivative_curve.log_df(prev)) / dt;
            const double var_sum = variance_integral_sum(params, t - t0);
            const double total_shift = fwd_deriv + 0.5 * (var_sum - var_sum_prev) / dt;
            shifts.basis_shift.push_back(total_shift - shifts.bond_shift.back());
            var_sum_prev = var_sum;
        }
        var_prev = var;
        prev = t;
    }

    for (const auto& p : bond_curve.pillars()) {
        const double model =
            std::exp(-shifts.bond_integral(p.time) +
                     0.5 * variance_integral(params, p.time - t0));
        if (!(std::fabs(model - p.df) <= 1e-10 * p.df)) {
            throw std::runtime_error("calibrate_shifts: bond repricing residual above 1e-10");
        }
    }
    for (const auto& p : derivative_curve.pillars()) {
        const double model =
            std::exp(-shifts.bond_integral(p.time) - shifts.basis_integral(p.time) +
                     0.5 * variance_integral_sum(params, p.time - t0));
        if (!(std::fabs(model - p.df) <= 1e-10 * p.df)) {
            throw std::runtime_error(
                "calibrate_shifts: derivative repricing residual above 1e-10");
        }
    }
    return shifts;
}

double quadrature_covariance(const ModelParams& params, const RepoSchedule& schedule) {
    params.validate();
    schedule.validate();
    const double scale = params.rho * params.sigma * params.epsilon;
    if (scale == 0.0) return 0.0;
    const double tau = schedule.start - schedule.fix;
    const double delta = schedule.end - schedule.start;
    const double mu = schedule.bond_maturity - schedule.end;
    const double th = params.theta;
    const double ka = params.kappa;
    if (std::isinf(mu) && th == 0.0) {
        throw std::domain_error("quadrature_covariance: infinite maturity needs theta > 0");
    }
    // local stable factor, independent of the closed-form evaluation path
    const auto decay_avg = [](double a, double x) {
        return a == 0.0 ? x : -std::expm1(-a * x) / a;
    };
    const double i1 = integrate(
        [&](double u) { return std::exp(-th * u) * decay_avg(ka, u); }, 0.0,
        tau + delta);
    const double i2 =
        tau > 0.0 ? integrate([&](double u) {
                        return std::exp(-th * u) * decay_avg(ka, u + delta);
                    },
                              0.0, tau)
                  : 0.0;
    return scale * (decay_avg(th, mu) * i1 - decay_avg(th, delta + mu) * i2);
}

SimResult mc_repo_rate(const DiscountCurve& bond_curve,
                       const DiscountCurve& derivative_curve,
                       const ModelParams& params, const RepoSchedule& schedule,
                       const SimConfig& config) {
    params.validate();
    schedule.validate();
    config.validate();
    if (schedule.fix != bond_curve.valuation_time()) {
        throw std::invalid_argument(
            "mc_repo_rate: the schedule must fix at the curve valuation time");
    }
    if (schedule.end > derivative_curve.last_time()) {
        throw std::out_of_range(
            "mc_repo_rate: period end beyond the derivative curve span");
    }
    const ShiftFunctions shifts = calibrate_shifts(bond_curve, derivative_curve, params);

    const double t0 = schedule.fix;
    const double s = schedule.start - t0;
    const double e = schedule.end - t0;
    const double big_t = schedule.bond_maturity - t0;
    const double th = params.theta;
    if (std::isinf(big_t) && th == 0.0) {
        throw std::domain_error("mc_repo_rate: infinite maturity needs theta > 0");
    }

    const double g_s = g_factor(th, big_t - s);
    const double g_e = g_factor(th, big_t - e);
    const double s2 = params.sigma * params.sigma;
    const double dvar = std::isinf(big_t)
                            ? -(e - s) / (th * th)
                            : g_product_integral(th, th, big_t - e) -
                                  g_product_integral(th, th, big_t - s);
    const double drift_de = shifts.bond_integral(schedule.end) +
                            shifts.basis_integral(schedule.end);
    const double drift_ratio = (shifts.bond_integral(schedule.end) -
                                shifts.bond_integral(schedule.start)) +
                               0.5 * s2 * dvar;

    const PathGenerator gen(params, s, e, config.n_steps, config.seed,
                            config.antithetic);
    const auto observe = [&](std::uint64_t path, std::array<double, 2>& out) {
        auto value = [&](const PathState& st) -> std::array<double, 2> {
            const double log_de = -drift_de - st.int_x - st.int_y;
            const double log_ratio = drift_ratio + g_s * st.x_s - g_e * st.x_e;
            const double de = std::exp(log_de);
            return {de * std::exp(log_ratio), de};
        };
        if (!gen.antithetic()) {
            out = value(gen.generate(path));
        } else {
            const auto [a, b] = gen.generate_pair(path);
            const auto va = value(a);
            const auto vb = value(b);
            out = {0.5 * (va[0] + vb[0]), 0.5 * (va[1] + vb[1])};
        }
    };

    std::array<double, 2> center{};
    const auto sums = run_paths<2>(config, center, observe);
    const auto m = finish<2>(sums, center);

    const double g = m.mean[0] / m.mean[1];
    SimResult result;
    result.n_paths = config.n_paths;
    result.estimate = (g - 1.0) / schedule.accrual;
    if (m.count < 2.0) {
        result.std_error = std::numeric_limits<double>::infinity();
    } else {
        const double var_g = (m.cov[0][0] - 2.0 * g * m.cov[0][1] + g * g * m.cov[1][1]) /
                             (m.mean[1] * m.mean[1] * m.count);
        result.std_error = std::sqrt(std::fmax(var_g, 0.0)) / schedule.accrual;
    }
    return result;
}

SimResult mc_convexity(const ModelParams& params, const RepoSchedule& schedule,
                       const SimConfig& config, double bond_level,
                       double basis_level) {
    params.validate();
    schedule.validate();
    config.validate();
    const double t0 = schedule.fix;
    const double s = schedule.start - t0;
    const double e = schedule.end - t0;
    const double big_t = schedule.bond_maturity - t0;
    const double th = params.theta;
    if (std::isinf(big_t) && th == 0.0) {
        throw std::domain_error("mc_convexity: infinite maturity needs theta > 0");
    }

    const double g_s = g_factor(th, big_t - s);
    const double g_e = g_factor(th, big_t - e);
    const double s2 = params.sigma * params.sigma;
    const double dvar = std::isinf(big_t)
                            ? -(e - s) / (th * th)
                            : g_product_integral(th, th, big_t - e) -
                                  g_product_integral(th, th, big_t - s);
    const double drift_ratio = bond_level * (e - s) + 0.5 * s2 * dvar;
    const double drift_basis = basis_level * e;

    const PathGenerator gen(params, s, e, config.n_steps, config.seed,
                            config.antithetic);
    const auto observe = [&](std::uint64_t path, std::array<double, 3>& out) {
        auto value = [&](const PathState& st) -> std::array<double, 3> {
            const double b = drift_basis + st.int_y;
            const double p = drift_ratio + g_s * st.x_s - g_e * st.x_e;
            return {std::exp(-b + p), std::exp(-b), std::exp(p)};
        };
        if (!gen.antithetic()) {
            out = value(gen.generate(path));
        } else {
            const auto [a, b] = gen.generate_pair(path);
            const auto va = value(a);
            const auto vb = value(b);
            out = {0.5 * (va[0] + vb[0]), 0.5 * (va[1] + vb[1]), 0.5 * (va[2] + vb[2])};
        }
    };

    std::array<double, 3> center{};
    const auto sums = run_paths<3>(config, center, observe);
    const auto m = finish<3>(sums, center);

    SimResult result;
    result.n_paths = config.n_paths;
    result.estimate = std::log(m.mean[0]) - std::log(m.mean[1]) - std::log(m.mean[2]);
    if (m.count < 2.0) {
        result.std_error = std::numeric_limits<double>::infinity();
    } else {
        const double u = m.mean[0], v = m.mean[1], w = m.mean[2];
        double var = m.cov[0][0] / (u * u) + m.cov[1][1] / (v * v) +
                     m.cov[2][2] / (w * w) - 2.0 * m.cov[0][1] / (u * v) -
                     2.0 * m.cov[0][2] / (u * w) + 2.0 * m.cov[1][2] / (v * w);
        result.std_error = std::sqrt(std::fmax(var, 0.0) / m.count);
    }
    return result;
}

}  // namespace repoconv
