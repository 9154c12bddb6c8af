#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "banditsim/simulation.hpp"

namespace banditsim {

enum class TaskKind { MBest, MultiBandit };
enum class DistributionKind { Bernoulli, PointMass };

// One experiment: the instance, the m sweep and the simulation parameters.
// Loaded from the flat key = value format documented in the README, or
// produced by builtin_experiments().
struct ExperimentConfig {
    std::string name;
    TaskKind kind = TaskKind::MBest;
    DistributionKind distribution = DistributionKind::Bernoulli;
    std::vector<double> means;                       // m_best tasks
    std::vector<std::vector<double>> problem_means;  // multi_bandit tasks
    std::vector<int> m_values;                       // m_best tasks
    std::optional<long long> budget;                 // nullopt = auto
    long long trials = 10000;
    std::uint64_t seed = 1;
    std::vector<StrategySpec> strategies;

    int num_arms() const;
    BanditInstance instance() const;
    MultiBanditInstance multibandit_instance() const;
    // Explicit budget, or the suggested one when set to auto.
    long long resolved_budget() const;

    bool operator==(const ExperimentConfig&) const = default;
};

// Throws ConfigError naming the violated invariant.
void validate_config(const ExperimentConfig& config);

// The six builtin Bernoulli experiments (optimal mean 1/2, m swept over
// 2..K-1, auto budget, strategies uniform/sr/sar/gap_e(c=2)).
std::vector<ExperimentConfig> builtin_experiments();

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace banditsim
