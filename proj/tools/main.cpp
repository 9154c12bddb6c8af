// banditsim: fixed-budget pure-exploration bandit simulator.
//
// Subcommands:
//   experiments list      show the builtin experiments
//   run                   run an experiment sweep, write a CSV
//   bounds                print the hardness/bound CSV for a config
//   complexity            print a readable hardness table
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "banditsim/commands.hpp"
#include "banditsim/errors.hpp"

namespace {

banditsim::ExperimentConfig select_config(int experiment_index,
                                          const std::string& config_path) {
    if ((experiment_index > 0) == !config_path.empty()) {
        throw banditsim::ConfigError(
            "exactly one of --experiment and --config is required");
    }
    if (experiment_index > 0) {
        const auto experiments = banditsim::builtin_experiments();
        if (experiment_index > static_cast<int>(experiments.size())) {
            throw banditsim::ConfigError("--experiment must lie in 1.." +
                                         std::to_string(experiments.size()));
        }
        return experiments[experiment_index - 1];
    }
    return banditsim::load_config(config_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-budget pure-exploration bandit simulator"};
    app.require_subcommand(1);

    auto* experiments = app.add_subcommand("experiments", "builtin experiments");
    experiments->require_subcommand(1);
    auto* list = experiments->add_subcommand("list", "list the builtin experiments");

    int experiment_index = 0;
    std::string config_path;
    std::optional<long long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
    std::string out_path;
    int threads = 0;

    auto* run = app.add_subcommand("run", "run an experiment sweep and write a CSV");
    run->add_option("--experiment", experiment_index, "builtin experiment index (1..6)");
    run->add_option("--config", config_path, "experiment config file");
    run->add_option("--trials", trials, "override the trial count");
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--budget", budget, "override the evaluation budget n");
    run->add_option("--out", out_path, "output CSV path (default <name>.csv)");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* bounds = app.add_subcommand("bounds", "hardness and error-bound CSV");
    bounds->add_option("--experiment", experiment_index, "builtin experiment index (1..6)");
    bounds->add_option("--config", config_path, "experiment config file");

    std::optional<int> complexity_m;
    auto* complexity = app.add_subcommand("complexity", "hardness table");
    complexity->add_option("--experiment", experiment_index, "builtin experiment index (1..6)");
    complexity->add_option("--config", config_path, "experiment config file");
    complexity->add_option("--m", complexity_m, "show one m with per-arm gaps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*list) {
            banditsim::list_experiments(std::cout);
        } else if (*run) {
            auto config = select_config(experiment_index, config_path);
            banditsim::RunOverrides overrides;
            overrides.trials = trials;
            overrides.seed = seed;
            overrides.budget = budget;
            overrides.threads = threads;
            if (out_path.empty()) out_path = config.name + ".csv";
            banditsim::run_command(std::move(config), overrides, out_path, std::cout);
        } else if (*bounds) {
            banditsim::bounds_command(select_config(experiment_index, config_path),
                                      std::cout);
        } else if (*complexity) {
            banditsim::complexity_command(select_config(experiment_index, config_path),
                                          complexity_m, std::cout);
        }
    } catch (const banditsim::ConfigError& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    }
    return 0;
}
