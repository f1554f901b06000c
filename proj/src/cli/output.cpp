#include "escortdyn/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "escortdyn/errors.hpp"

namespace escortdyn::cli {
namespace {

std::vector<std::string> columns(const Trajectory& traj) {
    std::vector<std::string> names{"t"};
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("x_" + std::to_string(i));
    }
    names.emplace_back("escort_mean_fitness");
    if (!traj.diagnostics.empty() && traj.diagnostics.front().lyapunov) {
        names.emplace_back("lyapunov");
    }
    if (!traj.diagnostics.empty() && traj.diagnostics.front().integral_of_motion) {
        names.emplace_back("integral");
    }
    return names;
}

std::vector<double> row(const Trajectory& traj, std::size_t k) {
    std::vector<double> values{traj.times[k]};
    values.insert(values.end(), traj.states[k].coords().begin(), traj.states[k].coords().end());
    const auto& d = traj.diagnostics[k];
    values.push_back(d.escort_mean_fitness);
    if (d.lyapunov) {
        values.push_back(*d.lyapunov);
    }
    if (d.integral_of_motion) {
        values.push_back(*d.integral_of_motion);
    }
    return values;
}

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format a double");
    }
    return std::string(buf, end);
}

void write_csv(std::ostream& out, const Trajectory& traj) {
    const auto names = columns(traj);
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? "," : "") << names[i];
    }
    out << '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto values = row(traj, k);
        for (std::size_t i = 0; i < values.size(); ++i) {
            out << (i ? "," : "") << format_double(values[i]);
        }
        out << '\n';
    }
}

nlohmann::json trajectory_json(const Trajectory& traj) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row(traj, k)) {
            r.push_back(json_number(v));
        }
        rows.push_back(std::move(r));
    }
    nlohmann::json termination{{"status", to_string(traj.termination.kind)}, {"t", traj.termination.t}};
    if (traj.termination.index) {
        termination["index"] = *traj.termination.index;
    }
    return {{"columns", columns(traj)}, {"rows", std::move(rows)}, {"termination", std::move(termination)}};
}

void write_trajectory(const std::string& path, const std::string& format, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open output file " + path);
    }
    if (format == "json") {
        out << trajectory_json(traj).dump(2) << '\n';
    } else {
        write_csv(out, traj);
    }
    if (!out) {
        throw Error("failed writing output file " + path);
    }
}

}  // namespace escortdyn::cli
