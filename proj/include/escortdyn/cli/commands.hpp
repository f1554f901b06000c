#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "escortdyn/cli/config.hpp"
#include "escortdyn/dynamics.hpp"

namespace escortdyn::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfigError = 2,
    kExitStartError = 3,  // DomainError at t0, or the very first step leaves the simplex
    kExitMidRun = 4,      // BoundaryExit or StepFailure after at least one step
};

struct RunOutcome {
    int exit_code = kExitOk;
    nlohmann::json summary;
    std::optional<Trajectory> trajectory;
};

// Integrates one validated config, writes its trajectory file (if configured)
// and builds the summary object. Never throws for integration failures; those
// are mapped onto exit codes.
RunOutcome execute(const RunConfig& config);

int run_command(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

// Comma-separated reals; throws ConfigError when empty or malformed.
std::vector<double> parse_values(const std::string& text);

// Worker count for `jobs` independent runs: ESCORTDYN_THREADS if set, else the
// number of logical processors, never more than `jobs`.
std::size_t sweep_thread_count(std::size_t jobs);

// Output path for one sweep member: `traj.csv` becomes `traj_q=0.5.csv`.
std::string sweep_output_path(const std::string& base, const std::string& param, double value);

int sweep_command(const std::filesystem::path& config_path, const std::string& param, const std::string& values,
                  std::ostream& out, std::ostream& err);

int paper_suite_command(double tolerance_scale, std::ostream& out);

}  // namespace escortdyn::cli
