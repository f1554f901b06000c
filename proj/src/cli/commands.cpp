#include "escortdyn/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <thread>

#include "escortdyn/acceptance.hpp"
#include "escortdyn/analysis.hpp"
#include "escortdyn/cli/output.hpp"
#include "escortdyn/errors.hpp"

namespace escortdyn::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kEssSamples = 1000;
constexpr double kLyapunovStepTolerance = 1e-10;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Largest |q(x_k) - q(x_0)| / |q(x_0)| over the samples; null when undefined.
json relative_drift(const std::vector<double>& series) {
    if (series.empty() || !std::isfinite(series.front()) || series.front() == 0.0) {
        return nullptr;
    }
    double drift = 0.0;
    for (double v : series) {
        drift = std::max(drift, std::abs(v - series.front()) / std::abs(series.front()));
    }
    return finite_or_null(drift);
}

json summarize(const RunConfig& config, const Escort& phi, const FitnessLandscape& f, const Trajectory& traj) {
    const auto& last = traj.states.back();
    std::vector<double> products;
    for (const auto& x : traj.states) {
        products.push_back(std::accumulate(x.coords().begin(), x.coords().end(), 1.0, std::multiplies<>()));
    }
    json termination{{"t", traj.termination.t}};
    if (traj.termination.index) {
        termination["index"] = *traj.termination.index;
    }
    json summary{{"status", to_string(traj.termination.kind)},
                 {"t_final", traj.times.back()},
                 {"x_final", last.coords()},
                 {"drift_product", relative_drift(products)},
                 {"drift_integral", nullptr},
                 {"lyapunov_monotone", nullptr},
                 {"termination", termination},
                 {"samples", traj.size()}};
    if (config.reference && phi.is_scalar()) {
        std::vector<double> integrals;
        std::vector<double> lyapunov;
        for (const auto& row : traj.diagnostics) {
            integrals.push_back(*row.integral_of_motion);
            lyapunov.push_back(*row.lyapunov);
        }
        summary["drift_integral"] = relative_drift(integrals);
        summary["lyapunov_monotone"] = is_non_increasing(lyapunov, kLyapunovStepTolerance);
        const auto ess = ess_check_sampled(f, SimplexPoint(*config.reference), kEssSamples, std::nullopt, config.seed);
        summary["ess_sampled"] = {
            {"passed", ess.passed()}, {"min_margin", ess.min_margin}, {"samples", ess.samples_tested}};
    }
    if (config.output) {
        summary["output"] = config.output->path;
    }
    return summary;
}

double sup_deviation(const Trajectory& a, const Trajectory& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        for (std::size_t i = 0; i < a.states[k].size(); ++i) {
            d = std::max(d, std::abs(a.states[k][i] - b.states[k][i]));
        }
    }
    return d;
}

// Identity-escort run with the same landscape and schedule, optionally with time
// stretched by `time_scale` (step and horizon both multiplied).
std::optional<Trajectory> identity_reference(const RunConfig& config, double time_scale) {
    try {
        const auto phi = Escort::identity();
        const auto f = make_landscape(config.landscape, phi, config.x0.size());
        IntegrateOptions o{.t_end = config.t_end * time_scale,
                           .step = config.step * time_scale,
                           .observe_every = config.observe_every};
        return integrate(phi, f, SimplexPoint(config.x0), o);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

RunOutcome execute(const RunConfig& config) {
    RunOutcome outcome;
    try {
        const auto phi = make_escort(config.escort);
        const auto f = make_landscape(config.landscape, phi, config.x0.size());
        Trajectory traj;
        try {
            traj = integrate(phi, f, SimplexPoint(config.x0), make_options(config));
        } catch (const DomainError& e) {
            outcome.exit_code = kExitStartError;
            outcome.summary = {{"status", "DomainError"}, {"message", e.what()}};
            return outcome;
        }
        if (config.output) {
            write_trajectory(config.output->path, config.output->format, traj);
        }
        outcome.summary = summarize(config, phi, f, traj);
        if (traj.termination.kind != Termination::Kind::Completed) {
            outcome.exit_code = traj.size() == 1 ? kExitStartError : kExitMidRun;
        }
        outcome.trajectory = std::move(traj);
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.summary = {{"status", "ConfigError"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        outcome.exit_code = kExitFailure;
        outcome.summary = {{"status", "Error"}, {"message", e.what()}};
    }
    return outcome;
}

int run_command(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    const auto outcome = execute(config);
    out << outcome.summary.dump() << '\n';
    if (outcome.exit_code != kExitOk && outcome.summary.contains("message")) {
        err << outcome.summary["message"].get<std::string>() << '\n';
    }
    return outcome.exit_code;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string token = text.substr(start, end - start);
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token.empty()) {
            if (text.find_first_not_of(" \t") == std::string::npos) {
                break;
            }
            throw ConfigError("empty entry in --values");
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
            throw ConfigError("'" + token + "' in --values is not a finite number");
        }
        values.push_back(v);
        start = end + 1;
    }
    if (values.empty()) {
        throw ConfigError("--values must list at least one value");
    }
    return values;
}

std::size_t sweep_thread_count(std::size_t jobs) {
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ESCORTDYN_THREADS")) {
        std::size_t cap = 0;
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
        if (ec == std::errc{} && ptr == text.data() + text.size() && cap > 0) {
            threads = cap;
        }
    }
    return std::max<std::size_t>(1, std::min(threads, jobs));
}

std::string sweep_output_path(const std::string& base, const std::string& param, double value) {
    const std::filesystem::path p(base);
    const std::string name = p.stem().string() + "_" + param + "=" + format_double(value) + p.extension().string();
    return (p.parent_path() / name).string();
}

int sweep_command(const std::filesystem::path& config_path, const std::string& param, const std::string& values_text,
                  std::ostream& out, std::ostream& err) {
    RunConfig base;
    std::vector<double> values;
    try {
        base = load_config(config_path);
        values = parse_values(values_text);
        const std::string& family = base.escort.family;
        if (param == "q") {
            if (family != "power" && family != "identity") {
                throw ConfigError("--param q needs a power or identity escort, config has " + family);
            }
        } else if (param == "beta") {
            if (family != "scaled" && family != "identity") {
                throw ConfigError("--param beta needs a scaled or identity escort, config has " + family);
            }
        } else {
            throw ConfigError("--param must be q or beta");
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::vector<RunConfig> configs;
    for (double v : values) {
        RunConfig c = base;
        c.escort = {param == "q" ? "power" : "scaled", v};
        if (c.output) {
            c.output->path = sweep_output_path(base.output->path, param, v);
        }
        configs.push_back(std::move(c));
    }

    std::vector<RunOutcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < configs.size(); k = next++) {
            outcomes[k] = execute(configs[k]);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t threads = sweep_thread_count(configs.size());
    for (std::size_t t = 0; t + 1 < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    const auto reference = identity_reference(base, 1.0);
    json runs = json::array();
    int exit_code = kExitOk;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto& outcome = outcomes[k];
        json entry{{"value", values[k]}, {"exit_code", outcome.exit_code}, {"summary", outcome.summary}};
        if (configs[k].output) {
            entry["output"] = configs[k].output->path;
        }
        entry["deviation_from_identity"] = nullptr;
        if (outcome.trajectory && reference) {
            entry["deviation_from_identity"] = finite_or_null(sup_deviation(*outcome.trajectory, *reference));
        }
        if (param == "beta") {
            // Scaled(beta) at t against Identity at beta t.
            entry["time_rescaled_deviation"] = nullptr;
            if (outcome.trajectory && values[k] > 0.0) {
                if (const auto stretched = identity_reference(base, values[k])) {
                    entry["time_rescaled_deviation"] = finite_or_null(sup_deviation(*outcome.trajectory, *stretched));
                }
            }
        }
        runs.push_back(std::move(entry));
        exit_code = std::max(exit_code, outcome.exit_code);
    }
    const json aggregate{{"param", param},
                         {"values", values},
                         {"status", exit_code == kExitOk ? "ok" : "failed"},
                         {"runs", std::move(runs)}};
    out << aggregate.dump() << '\n';
    return exit_code;
}

int paper_suite_command(double tolerance_scale, std::ostream& out) {
    const auto results = run_acceptance(tolerance_scale);
    const bool ok = print_acceptance_report(out, results);
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    out << passed << "/" << results.size() << " checks passed\n";
    return ok ? kExitOk : kExitFailure;
}

}  // namespace escortdyn::cli
