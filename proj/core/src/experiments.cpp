#include "banditsim/experiments.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "banditsim/errors.hpp"
#include "text.hpp"

namespace banditsim {

namespace {

std::vector<ArmDistribution> arms_from(DistributionKind kind,
                                       const std::vector<double>& means) {
    std::vector<ArmDistribution> arms;
    arms.reserve(means.size());
    for (double mean : means) {
        arms.push_back(kind == DistributionKind::Bernoulli
                           ? ArmDistribution::bernoulli(mean)
                           : ArmDistribution::point_mass(mean));
    }
    return arms;
}

}  // namespace

int ExperimentConfig::num_arms() const {
    if (kind == TaskKind::MBest) return static_cast<int>(means.size());
    return problem_means.empty() ? 0 : static_cast<int>(problem_means.front().size());
}

BanditInstance ExperimentConfig::instance() const {
    return BanditInstance(arms_from(distribution, means));
}

MultiBanditInstance ExperimentConfig::multibandit_instance() const {
    std::vector<BanditInstance> problems;
    problems.reserve(problem_means.size());
    for (const auto& pm : problem_means) {
        problems.emplace_back(arms_from(distribution, pm));
    }
    return MultiBanditInstance(std::move(problems));
}

long long ExperimentConfig::resolved_budget() const {
    if (budget) return *budget;
    if (kind == TaskKind::MBest) return suggest_budget(means, m_values);
    return suggest_budget_multibandit(multibandit_instance());
}

void validate_config(const ExperimentConfig& config) {
    auto fail = [&](const std::string& invariant) {
        throw ConfigError("config '" + config.name + "': " + invariant);
    };
    if (config.name.empty()) fail("name must not be empty");
    if (config.trials < 1) fail("trials >= 1");
    if (config.strategies.empty()) fail("at least one strategy is required");
    for (const auto& spec : config.strategies) {
        if (spec.kind == StrategySpec::Kind::GapE && !(spec.gap_e_c > 0.0)) {
            fail("gap_e exploration parameter c must be positive");
        }
    }
    if (config.budget && *config.budget < 1) fail("budget must be positive");

    if (config.kind == TaskKind::MBest) {
        if (!config.problem_means.empty()) fail("problem_means apply only to multi_bandit tasks");
        if (config.means.size() < 2) fail("means must list K >= 2 arms");
        for (double mean : config.means) {
            if (!(mean >= 0.0 && mean <= 1.0)) fail("means within [0,1]");
        }
        if (config.m_values.empty()) fail("m_values must not be empty");
        const int k = config.num_arms();
        for (int m : config.m_values) {
            if (m < 1 || m > k - 1) fail("m_values within 1..K-1");
        }
    } else {
        if (!config.means.empty()) fail("means apply only to m_best tasks");
        if (!config.m_values.empty()) fail("m_values apply only to m_best tasks");
        if (config.problem_means.empty()) fail("problem_means must list M >= 1 problems");
        const std::size_t k = config.problem_means.front().size();
        for (const auto& pm : config.problem_means) {
            if (pm.size() < 2) fail("each problem needs K >= 2 arms");
            if (pm.size() != k) fail("all problems must share one K");
            for (double mean : pm) {
                if (!(mean >= 0.0 && mean <= 1.0)) fail("means within [0,1]");
            }
        }
        if (config.strategies.size() != 1 ||
            config.strategies.front().kind != StrategySpec::Kind::Sar) {
            fail("multi_bandit tasks support only the sar strategy");
        }
    }
}

std::vector<ExperimentConfig> builtin_experiments() {
    const std::vector<StrategySpec> all_strategies = {
        StrategySpec::uniform(),
        StrategySpec::successive_rejects(),
        StrategySpec::sar(),
        StrategySpec::gap_e(2.0),
    };

    auto make = [&](std::string name, std::vector<double> means) {
        ExperimentConfig config;
        config.name = std::move(name);
        config.kind = TaskKind::MBest;
        config.distribution = DistributionKind::Bernoulli;
        config.means = std::move(means);
        const int k = config.num_arms();
        for (int m = 2; m <= k - 1; ++m) config.m_values.push_back(m);
        config.budget = std::nullopt;  // auto
        config.trials = 10000;
        config.seed = 1;
        config.strategies = all_strategies;
        return config;
    };

    auto group = [](std::vector<double>& means, int count, double value) {
        means.insert(means.end(), count, value);
    };

    std::vector<ExperimentConfig> experiments;

    {  // one group of bad arms
        std::vector<double> means{0.5};
        group(means, 19, 0.4);
        experiments.push_back(make("exp1-one-group", std::move(means)));
    }
    {  // two groups of bad arms
        std::vector<double> means{0.5};
        group(means, 5, 0.42);
        group(means, 14, 0.38);
        experiments.push_back(make("exp2-two-groups", std::move(means)));
    }
    {  // geometric progression: arm i has mean 1/2 - 0.37^i, so the means
       // are not sorted by arm index (arm 4 is the second best)
        std::vector<double> means{0.5};
        double power = 0.37;
        for (int i = 2; i <= 4; ++i) {
            power *= 0.37;
            means.push_back(0.5 - power);
        }
        experiments.push_back(make("exp3-geometric", std::move(means)));
    }
    {  // six arms in three groups
        experiments.push_back(
            make("exp4-three-groups", {0.5, 0.42, 0.4, 0.4, 0.35, 0.35}));
    }
    {  // arithmetic progression
        std::vector<double> means{0.5};
        for (int i = 2; i <= 15; ++i) means.push_back(0.5 - 0.025 * i);
        experiments.push_back(make("exp5-arithmetic", std::move(means)));
    }
    {  // three groups of bad arms, wide
        std::vector<double> means{0.5};
        group(means, 5, 0.45);
        group(means, 14, 0.43);
        group(means, 10, 0.38);
        experiments.push_back(make("exp6-three-groups-wide", std::move(means)));
    }

    for (const auto& config : experiments) validate_config(config);
    return experiments;
}

namespace {

using detail::parse_double;
using detail::parse_int64;
using detail::parse_uint64;
using detail::split_whitespace;
using detail::trim;

StrategySpec parse_strategy_token(std::string_view token, const std::string& where) {
    if (token == "uniform") return StrategySpec::uniform();
    if (token == "sr") return StrategySpec::successive_rejects();
    if (token == "sar") return StrategySpec::sar();
    if (token.starts_with("gap_e(c=") && token.ends_with(")")) {
        const std::string_view inner =
            token.substr(8, token.size() - 9);
        double c = 0.0;
        if (!parse_double(inner, c)) {
            throw ConfigError(where + ": malformed gap_e parameter '" +
                              std::string(token) + "'");
        }
        return StrategySpec::gap_e(c);
    }
    throw ConfigError(where + ": unknown strategy '" + std::string(token) +
                      "' (expected uniform, sr, sar or gap_e(c=<real>))");
}

std::vector<double> parse_double_list(std::string_view value, const std::string& where) {
    std::vector<double> values;
    for (std::string_view token : split_whitespace(value)) {
        double v = 0.0;
        if (!parse_double(token, v)) {
            throw ConfigError(where + ": malformed number '" + std::string(token) + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError(where + ": expected at least one number");
    return values;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    ExperimentConfig config;
    config.strategies.clear();
    std::unordered_set<std::string> seen;
    bool saw_kind = false;
    bool saw_distribution = false;

    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::string where = origin + ":" + std::to_string(line_number);

        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const std::string key(trim(stripped.substr(0, eq)));
        const std::string_view value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

        // problem_means is the one repeatable key (one line per problem)
        if (key != "problem_means" && !seen.insert(key).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }

        if (key == "name") {
            config.name = std::string(value);
        } else if (key == "kind") {
            if (value == "m_best") config.kind = TaskKind::MBest;
            else if (value == "multi_bandit") config.kind = TaskKind::MultiBandit;
            else throw ConfigError(where + ": kind must be m_best or multi_bandit");
            saw_kind = true;
        } else if (key == "distribution") {
            if (value == "bernoulli") config.distribution = DistributionKind::Bernoulli;
            else if (value == "point_mass") config.distribution = DistributionKind::PointMass;
            else throw ConfigError(where + ": distribution must be bernoulli or point_mass");
            saw_distribution = true;
        } else if (key == "means") {
            config.means = parse_double_list(value, where);
        } else if (key == "problem_means") {
            config.problem_means.push_back(parse_double_list(value, where));
        } else if (key == "m_values") {
            for (std::string_view token : split_whitespace(value)) {
                long long m = 0;
                if (!parse_int64(token, m)) {
                    throw ConfigError(where + ": malformed m value '" +
                                      std::string(token) + "'");
                }
                config.m_values.push_back(static_cast<int>(m));
            }
        } else if (key == "budget") {
            if (value == "auto") {
                config.budget = std::nullopt;
            } else {
                long long budget = 0;
                if (!parse_int64(value, budget)) {
                    throw ConfigError(where + ": budget must be 'auto' or an integer");
                }
                config.budget = budget;
            }
        } else if (key == "trials") {
            if (!parse_int64(value, config.trials)) {
                throw ConfigError(where + ": malformed trials");
            }
        } else if (key == "seed") {
            if (!parse_uint64(value, config.seed)) {
                throw ConfigError(where + ": malformed seed");
            }
        } else if (key == "strategies") {
            for (std::string_view token : split_whitespace(value)) {
                config.strategies.push_back(parse_strategy_token(token, where));
            }
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }

    if (config.name.empty()) throw ConfigError(origin + ": missing key 'name'");
    if (!saw_kind) throw ConfigError(origin + ": missing key 'kind'");
    if (!saw_distribution) throw ConfigError(origin + ": missing key 'distribution'");
    if (config.strategies.empty()) throw ConfigError(origin + ": missing key 'strategies'");
    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

std::string serialize_config(const ExperimentConfig& config) {
    using detail::format_double;
    std::ostringstream out;
    out << "name = " << config.name << "\n";
    out << "kind = " << (config.kind == TaskKind::MBest ? "m_best" : "multi_bandit") << "\n";
    out << "distribution = "
        << (config.distribution == DistributionKind::Bernoulli ? "bernoulli" : "point_mass")
        << "\n";
    if (config.kind == TaskKind::MBest) {
        out << "means =";
        for (double mean : config.means) out << ' ' << format_double(mean);
        out << "\n";
        out << "m_values =";
        for (int m : config.m_values) out << ' ' << m;
        out << "\n";
    } else {
        for (const auto& pm : config.problem_means) {
            out << "problem_means =";
            for (double mean : pm) out << ' ' << format_double(mean);
            out << "\n";
        }
    }
    out << "budget = ";
    if (config.budget) out << *config.budget;
    else out << "auto";
    out << "\n";
    out << "trials = " << config.trials << "\n";
    out << "seed = " << config.seed << "\n";
    out << "strategies =";
    for (const auto& spec : config.strategies) {
        out << ' ' << spec.name();
        if (spec.kind == StrategySpec::Kind::GapE) {
            out << "(" << spec.params() << ")";
        }
    }
    out << "\n";
    return out.str();
}

}  // namespace banditsim
