#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "escortdyn/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Escort replicator dynamics on the probability simplex"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run = app.add_subcommand("run", "Integrate one configuration");
    run->add_option("--config", run_config, "JSON run configuration")->required();

    std::string sweep_config;
    std::string param;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Run one configuration per escort parameter value");
    sweep->add_option("--config", sweep_config, "JSON run configuration")->required();
    sweep->add_option("--param", param, "Swept parameter")->required()->check(CLI::IsMember({"q", "beta"}));
    sweep->add_option("--values", values, "Comma-separated values, e.g. 0.9,0.99,1.01")->required();

    double tolerance_scale = 1.0;
    auto* suite = app.add_subcommand("paper-suite", "Run the built-in acceptance criteria");
    suite->add_option("--tolerance-scale", tolerance_scale, "Multiply every tolerance (0 forces failures)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : escortdyn::cli::kExitConfigError;
    }

    if (*run) {
        return escortdyn::cli::run_command(run_config, std::cout, std::cerr);
    }
    if (*sweep) {
        return escortdyn::cli::sweep_command(sweep_config, param, values, std::cout, std::cerr);
    }
    return escortdyn::cli::paper_suite_command(tolerance_scale, std::cout);
}
