#include "repoconv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "repoconv/csv_io.hpp"
#include "repoconv/curves.hpp"
#include "repoconv/mc_oracle.hpp"
#include "repoconv/repo_pricing.hpp"

namespace repoconv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string fmt_time(double v) {
    if (std::isinf(v)) return "inf";
    return fmt("%g", v);
}

ordered_json json_time(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

ordered_json json_schedule(const RepoSchedule& s) {
    ordered_json j;
    j["fix"] = s.fix;
    j["start"] = s.start;
    j["end"] = s.end;
    j["maturity"] = json_time(s.bond_maturity);
    j["accrual"] = s.accrual;
    return j;
}

const ModelParams& require_params(const RunConfig& config) {
    if (!config.params_given) {
        throw std::invalid_argument("missing --params <file>");
    }
    return config.params;
}

DiscountCurve load_bond_curve(const RunConfig& config) {
    if (config.bond_curve_path.empty()) {
        throw std::invalid_argument("missing --bond-curve <file>");
    }
    return read_curve_csv_file(config.bond_curve_path);
}

void require_schedules(const RunConfig& config) {
    if (config.schedules.empty()) {
        throw std::invalid_argument("missing --schedule t,s,e,T,delta");
    }
}

}  // namespace

void load_params_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    const char* required[] = {"sigma", "epsilon", "theta", "kappa", "rho"};
    for (const char* key : required) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw std::runtime_error(path + ": missing numeric field '" + key + "'");
        }
    }
    for (const auto& [key, value] : j.items()) {
        const std::string k = key;
        if (k != "sigma" && k != "epsilon" && k != "theta" && k != "kappa" &&
            k != "rho" && k != "liquidity_mean" && k != "liquidity_std") {
            throw std::runtime_error(path + ": unknown field '" + k + "'");
        }
        (void)value;
    }
    config.params.sigma = j["sigma"].get<double>();
    config.params.epsilon = j["epsilon"].get<double>();
    config.params.theta = j["theta"].get<double>();
    config.params.kappa = j["kappa"].get<double>();
    config.params.rho = j["rho"].get<double>();
    config.liquidity_mean = j.value("liquidity_mean", 0.0);
    config.liquidity_std = j.value("liquidity_std", 0.0);
    config.params.validate();
    config.params_given = true;
}

RepoSchedule parse_schedule(const std::string& text) {
    std::vector<std::string> fields;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) {
        throw std::invalid_argument("schedule must be t,s,e,T,delta: " + text);
    }
    auto num = [&](const std::string& s) {
        if (s == "inf" || s == "+inf" || s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument("bad schedule field '" + s + "'");
        }
        return v;
    };
    RepoSchedule schedule{num(fields[0]), num(fields[1]), num(fields[2]),
                          num(fields[3]), num(fields[4])};
    schedule.validate();
    return schedule;
}

CommandResult cmd_adjust(const RunConfig& config) {
    const ModelParams& params = require_params(config);
    require_schedules(config);

    std::string table =
        "fix      start    end      maturity accrual  "
        "L               M_start         M_end           F               C        "
        "       residual\n";
    ordered_json rows = ordered_json::array();
    for (const auto& schedule : config.schedules) {
        const Adjustments adj = compute_adjustments(params, schedule,
                                                    config.liquidity_mean,
                                                    config.liquidity_std);
        const double residual =
            adj.total - ((adj.maturity_end - adj.maturity_start) + adj.forwardness);
        char line[320];
        std::snprintf(line, sizeof(line),
                      "%-8s %-8s %-8s %-8s %-8s %+.8e %+.8e %+.8e %+.8e %+.8e %+.1e\n",
                      fmt_time(schedule.fix).c_str(), fmt_time(schedule.start).c_str(),
                      fmt_time(schedule.end).c_str(),
                      fmt_time(schedule.bond_maturity).c_str(),
                      fmt_time(schedule.accrual).c_str(), adj.liquidity,
                      adj.maturity_start, adj.maturity_end, adj.forwardness, adj.total,
                      residual);
        table += line;

        ordered_json row;
        row["schedule"] = json_schedule(schedule);
        row["liquidity"] = adj.liquidity;
        row["maturity_start"] = adj.maturity_start;
        row["maturity_end"] = adj.maturity_end;
        row["forwardness"] = adj.forwardness;
        row["total"] = adj.total;
        row["residual"] = residual;
        rows.push_back(row);
    }
    if (config.json) {
        ordered_json j;
        j["command"] = "adjust";
        j["results"] = rows;
        return {0, j.dump(2) + "\n"};
    }
    return {0, table};
}

CommandResult cmd_price(const RunConfig& config) {
    const ModelParams& params = require_params(config);
    require_schedules(config);
    DiscountCurve bond = load_bond_curve(config);
    std::optional<DiscountCurve> observed;
    if (!config.repo_curve_path.empty()) {
        observed = read_curve_csv_file(config.repo_curve_path);
    }
    const RepoCurveView view(std::move(bond), params, std::move(observed));

    std::string table =
        "fix      start    end      maturity accrual  repo_rate\n";
    ordered_json rows = ordered_json::array();
    for (const auto& schedule : config.schedules) {
        const double rate = repo_rate(view, schedule);
        char line[160];
        std::snprintf(line, sizeof(line), "%-8s %-8s %-8s %-8s %-8s %+.10e\n",
                      fmt_time(schedule.fix).c_str(), fmt_time(schedule.start).c_str(),
                      fmt_time(schedule.end).c_str(),
                      fmt_time(schedule.bond_maturity).c_str(),
                      fmt_time(schedule.accrual).c_str(), rate);
        table += line;
        ordered_json row;
        row["schedule"] = json_schedule(schedule);
        row["repo_rate"] = rate;
        rows.push_back(row);
    }
    if (config.json) {
        ordered_json j;
        j["command"] = "price";
        j["results"] = rows;
        return {0, j.dump(2) + "\n"};
    }
    return {0, table};
}

CommandResult cmd_strip(const RunConfig& config) {
    if (config.quote_path.empty()) {
        throw std::invalid_argument("missing --quotes <file>");
    }
    const auto quotes = read_quote_csv_file(config.quote_path);
    const DiscountCurve curve = strip_bond_curve_from_spot_repos(quotes);
    if (config.json) {
        ordered_json j;
        j["command"] = "strip";
        j["valuation_time"] = curve.valuation_time();
        ordered_json arr = ordered_json::array();
        for (const auto& p : curve.pillars()) {
            ordered_json row;
            row["time"] = p.time;
            row["df"] = p.df;
            arr.push_back(row);
        }
        j["curve"] = arr;
        return {0, j.dump(2) + "\n"};
    }
    return {0, write_curve_csv(curve)};
}

CommandResult cmd_extrapolate(const RunConfig& config) {
    const ModelParams& params = require_params(config);
    DiscountCurve bond = load_bond_curve(config);
    if (config.repo_curve_path.empty()) {
        throw std::invalid_argument("missing --repo-curve <file>");
    }
    DiscountCurve observed = read_curve_csv_file(config.repo_curve_path);

    std::vector<double> pillars = config.pillars;
    if (pillars.empty()) {
        for (const auto& p : bond.pillars()) {
            if (p.time > observed.last_time()) pillars.push_back(p.time);
        }
    }
    const RepoCurveView view(std::move(bond), params, std::move(observed));
    const DiscountCurve extended = build_extrapolated_repo_curve(view, pillars);
    if (config.json) {
        ordered_json j;
        j["command"] = "extrapolate";
        j["observation_horizon"] = view.observation_horizon();
        ordered_json arr = ordered_json::array();
        for (const auto& p : extended.pillars()) {
            ordered_json row;
            row["time"] = p.time;
            row["df"] = p.df;
            arr.push_back(row);
        }
        j["curve"] = arr;
        return {0, j.dump(2) + "\n"};
    }
    return {0, write_curve_csv(extended)};
}

CommandResult cmd_verify(const RunConfig& config) {
    // Base parameters: from --params when given, else the built-in defaults.
    ModelParams base{0.01, 0.005, 0.03, 0.10, -0.5};
    if (config.params_given) base = config.params;

    struct Row {
        std::string name;
        ModelParams params;
        RepoSchedule schedule;
    };
    auto tweak = [&](double sigma, double epsilon, double theta, double kappa,
                     double rho) {
        ModelParams p = base;
        p.sigma = sigma;
        p.epsilon = epsilon;
        p.theta = theta;
        p.kappa = kappa;
        p.rho = rho;
        return p;
    };
    const std::vector<Row> grid = {
        {"reference", base, {0.0, 1.0, 1.25, 10.0, 0.25}},
        {"spot_start", base, {0.0, 0.0, 0.5, 5.0, 0.5}},
        {"repo_to_maturity", base, {0.0, 2.0, 2.25, 2.25, 0.25}},
        {"small_reversion", tweak(base.sigma, base.epsilon, 1e-8, 1e-8, base.rho),
         {0.0, 0.5, 1.0, 3.0, 0.5}},
        {"kappa_zero", tweak(base.sigma, base.epsilon, base.theta, 0.0, base.rho),
         {0.0, 1.0, 1.5, 8.0, 0.5}},
        {"rho_positive", tweak(base.sigma, base.epsilon, base.theta, base.kappa, 0.4),
         {0.0, 0.5, 0.75, 12.0, 0.25}},
        {"rho_zero", tweak(base.sigma, base.epsilon, base.theta, base.kappa, 0.0),
         {0.0, 1.0, 1.25, 10.0, 0.25}},
        {"deterministic", tweak(0.0, 0.0, base.theta, base.kappa, base.rho),
         {0.0, 1.0, 1.25, 10.0, 0.25}},
    };

    const double quad_tol = 1e-10;
    const double mc_floor = 1e-13;  // allows exact-agreement rows with zero SE

    std::string table =
        "case              C_closed        C_quadrature    quad_rel   "
        "C_mc            C_mc_se    C_dev   f_closed        f_mc            "
        "f_mc_se    f_dev   status\n";
    ordered_json rows = ordered_json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Row& row = grid[i];
        const double c_closed = convexity_adjustment(row.params, row.schedule);
        const double c_quad = quadrature_covariance(row.params, row.schedule);
        const double quad_rel =
            std::fabs(c_closed - c_quad) / std::fmax(std::fabs(c_closed), 1e-16);
        const bool quad_ok = quad_rel < quad_tol;

        SimConfig sim;
        sim.n_paths = config.paths;
        sim.seed = config.seed + i;
        sim.n_threads = config.threads;
        const SimResult c_mc = mc_convexity(row.params, row.schedule, sim);
        const double c_dev = std::fabs(c_mc.estimate - c_closed);
        const bool c_ok = c_dev <= 3.0 * c_mc.std_error + mc_floor;

        std::vector<double> grid_times = {0.25, 0.5, 5.0, 10.0, 15.0};
        if (row.schedule.start > 0.0) grid_times.push_back(row.schedule.start);
        grid_times.push_back(row.schedule.end);
        std::sort(grid_times.begin(), grid_times.end());
        grid_times.erase(std::unique(grid_times.begin(), grid_times.end()),
                         grid_times.end());
        const DiscountCurve bond = flat_curve(0.0, 0.02, grid_times);
        const DiscountCurve deriv = flat_curve(0.0, 0.022, grid_times);

        const RepoCurveView view(bond, row.params);
        const double f_closed = repo_rate(view, row.schedule);
        const SimResult f_mc =
            mc_repo_rate(bond, deriv, row.params, row.schedule, sim);
        const double f_dev = std::fabs(f_mc.estimate - f_closed);
        const bool f_ok = f_dev <= 3.0 * f_mc.std_error + mc_floor;

        const bool pass = quad_ok && c_ok && f_ok;
        all_pass = all_pass && pass;

        char line[512];
        std::snprintf(line, sizeof(line),
                      "%-17s %+.8e %+.8e %.3e %+.8e %.3e %6.2f  %+.8e %+.8e %.3e %6.2f  %s\n",
                      row.name.c_str(), c_closed, c_quad, quad_rel, c_mc.estimate,
                      c_mc.std_error,
                      c_mc.std_error > 0.0 ? c_dev / c_mc.std_error : 0.0, f_closed,
                      f_mc.estimate, f_mc.std_error,
                      f_mc.std_error > 0.0 ? f_dev / f_mc.std_error : 0.0,
                      pass ? "PASS" : "FAIL");
        table += line;

        ordered_json r;
        r["case"] = row.name;
        r["schedule"] = json_schedule(row.schedule);
        r["params"] = {{"sigma", row.params.sigma},
                       {"epsilon", row.params.epsilon},
                       {"theta", row.params.theta},
                       {"kappa", row.params.kappa},
                       {"rho", row.params.rho}};
        r["c_closed"] = c_closed;
        r["c_quadrature"] = c_quad;
        r["quad_rel_err"] = quad_rel;
        r["c_mc"] = c_mc.estimate;
        r["c_mc_se"] = c_mc.std_error;
        r["f_closed"] = f_closed;
        r["f_mc"] = f_mc.estimate;
        r["f_mc_se"] = f_mc.std_error;
        r["pass"] = pass;
        rows.push_back(r);
    }
    table += all_pass ? "all rows PASS\n" : "verification FAILED\n";

    const int exit_code = all_pass ? 0 : 2;
    if (config.json) {
        ordered_json j;
        j["command"] = "verify";
        j["paths"] = config.paths;
        j["seed"] = config.seed;
        j["rows"] = rows;
        j["all_pass"] = all_pass;
        return {exit_code, j.dump(2) + "\n"};
    }
    return {exit_code, table};
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"repo convexity pricing and verification"};
    app.require_subcommand(1);

    RunConfig config;
    std::string params_path;
    std::vector<std::string> schedule_args;
    std::string pillars_arg;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--params", params_path, "model parameter JSON file");
        cmd->add_option("--bond-curve", config.bond_curve_path, "bond curve CSV");
        cmd->add_option("--repo-curve", config.repo_curve_path,
                        "observed repo curve CSV");
        cmd->add_option("--quotes", config.quote_path, "spot repo quote CSV");
        cmd->add_option("--schedule", schedule_args,
                        "repo schedule t,s,e,T,delta (repeatable; T may be inf)");
        cmd->add_option("--pillars", pillars_arg,
                        "comma-separated extrapolation pillar times");
        cmd->add_option("--paths", config.paths, "Monte-Carlo path count");
        cmd->add_option("--seed", config.seed, "Monte-Carlo seed");
        cmd->add_option("--threads", config.threads,
                        "worker threads (0 = hardware)");
        cmd->add_flag("--json", config.json, "emit a JSON report");
        cmd->add_option("--out", out_path, "write the report to a file");
    };

    CLI::App* adjust = app.add_subcommand("adjust", "compute the adjustments");
    CLI::App* price = app.add_subcommand("price", "price repo rates from curves");
    CLI::App* strip = app.add_subcommand("strip", "strip a curve from spot quotes");
    CLI::App* extrapolate =
        app.add_subcommand("extrapolate", "extend an observed repo curve");
    CLI::App* verify =
        app.add_subcommand("verify", "closed form vs quadrature vs Monte Carlo");
    for (CLI::App* cmd : {adjust, price, strip, extrapolate, verify}) add_common(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (!params_path.empty()) load_params_file(params_path, config);
        for (const auto& text : schedule_args) {
            config.schedules.push_back(parse_schedule(text));
        }
        if (!pillars_arg.empty()) {
            std::stringstream ss(pillars_arg);
            std::string field;
            while (std::getline(ss, field, ',')) {
                config.pillars.push_back(std::stod(field));
            }
        }

        CommandResult result;
        if (*adjust) result = cmd_adjust(config);
        else if (*price) result = cmd_price(config);
        else if (*strip) result = cmd_strip(config);
        else if (*extrapolate) result = cmd_extrapolate(config);
        else result = cmd_verify(config);

        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + out_path);
            out << result.output;
        } else {
            std::cout << result.output;
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace repoconv
