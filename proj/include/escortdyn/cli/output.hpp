#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "escortdyn/dynamics.hpp"

namespace escortdyn::cli {

// Shortest decimal string that parses back to exactly `v`; non-finite values
// print as inf, -inf and nan.
std::string format_double(double v);

// Header `t,x_1,...,x_n,escort_mean_fitness[,lyapunov][,integral]`, then one
// row per sample.
void write_csv(std::ostream& out, const Trajectory& traj);

// {"columns": [...], "rows": [[...], ...], "termination": {...}}. Non-finite
// diagnostics are written as the strings "inf" and "-inf".
nlohmann::json trajectory_json(const Trajectory& traj);

void write_trajectory(const std::string& path, const std::string& format, const Trajectory& traj);

}  // namespace escortdyn::cli
