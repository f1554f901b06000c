#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "escortdyn/dynamics.hpp"
#include "escortdyn/escort.hpp"
#include "escortdyn/landscape.hpp"

namespace escortdyn::cli {

// Escort families reachable from a config file. Custom and vector-valued
// escorts need code and are library-only.
struct EscortSpec {
    std::string family = "identity";  // identity | scaled | power | constant | exponential
    std::optional<double> param;       // beta, q or c

    bool operator==(const EscortSpec&) const = default;
};

struct LandscapeSpec {
    // rsp | rsp_escort_quadratic | neg_identity | exp_decay
    std::optional<std::string> builtin;
    std::vector<std::vector<double>> matrix;
    std::string form = "linear";  // linear: A x | escort: A phi(x) | escort_log: A log_phi(x)

    bool operator==(const LandscapeSpec&) const = default;
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";  // csv | json

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    EscortSpec escort;
    LandscapeSpec landscape;
    std::vector<double> x0;
    double t_end = 1.0;
    double step = 1e-3;
    std::size_t observe_every = 1;
    std::optional<std::vector<double>> reference;
    std::uint64_t seed = 0;
    std::optional<OutputSpec> output;

    bool operator==(const RunConfig&) const = default;
};

// Both throw ConfigError with a message naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

Escort make_escort(const EscortSpec& spec);
FitnessLandscape make_landscape(const LandscapeSpec& spec, const Escort& phi, std::size_t n);
IntegrateOptions make_options(const RunConfig& config);

}  // namespace escortdyn::cli
