/**
 * @file cli.hpp
 * @brief Command implementations behind the repoconv command-line tool.
 *
 * Each command is a pure function of its RunConfig: same files, flags and
 * seed give byte-identical output.  Validation problems throw; the
 * launcher maps them to exit code 1.  cmd_verify returns exit code 2 when
 * any comparison row fails.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repoconv/convexity.hpp"

namespace repoconv {

struct RunConfig {
    ModelParams params;
    double liquidity_mean = 0.0;
    double liquidity_std = 0.0;
    bool params_given = false;

    std::vector<RepoSchedule> schedules;

    std::string bond_curve_path;
    std::string repo_curve_path;
    std::string quote_path;
    std::vector<double> pillars;  // extrapolation pillar times (empty = bond pillars beyond E)

    std::uint64_t paths = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
    bool json = false;
};

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

/// Parses a params JSON file into config.params / liquidity moments.
void load_params_file(const std::string& path, RunConfig& config);

/// Parses "t,s,e,T,delta" (T may be "inf") into a schedule.
RepoSchedule parse_schedule(const std::string& text);

CommandResult cmd_adjust(const RunConfig& config);
CommandResult cmd_price(const RunConfig& config);
CommandResult cmd_strip(const RunConfig& config);
CommandResult cmd_extrapolate(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);

/// Full argv entry point used by the binary; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace repoconv
