#include "banditsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "banditsim/complexity.hpp"
#include "banditsim/errors.hpp"
#include "text.hpp"

namespace banditsim {

using detail::format_double;

void write_sweep_csv(const SweepResult& sweep, long long trials, std::uint64_t seed,
                     std::ostream& out) {
    out << "experiment,strategy,params,m,n,trials,errors,p_hat,ci_low,ci_high,bound,seed\n";
    for (const SweepRow& row : sweep.rows) {
        out << row.experiment << ',' << row.strategy.name() << ','
            << row.strategy.params() << ',' << row.m << ',' << row.n << ','
            << trials << ',' << row.estimate.errors << ','
            << format_double(row.estimate.p_hat) << ','
            << format_double(row.estimate.ci_low) << ','
            << format_double(row.estimate.ci_high) << ',';
        if (row.bound) out << format_double(*row.bound);
        out << ',' << seed << '\n';
    }
}

namespace {

std::string strategy_label(const StrategySpec& spec) {
    std::string label = spec.name();
    if (spec.kind == StrategySpec::Kind::GapE) label += "(" + spec.params() + ")";
    return label;
}

void print_summary(const SweepResult& sweep, std::ostream& log) {
    log << std::left << std::setw(12) << "strategy" << std::right << std::setw(4)
        << "m" << std::setw(10) << "n" << std::setw(10) << "p_hat" << std::setw(22)
        << "wilson 95%" << std::setw(12) << "bound" << "\n";
    for (const SweepRow& row : sweep.rows) {
        std::ostringstream interval;
        interval << "[" << std::fixed << std::setprecision(4) << row.estimate.ci_low
                 << ", " << row.estimate.ci_high << "]";
        log << std::left << std::setw(12) << strategy_label(row.strategy) << std::right
            << std::setw(4) << row.m << std::setw(10) << row.n << std::setw(10)
            << std::fixed << std::setprecision(4) << row.estimate.p_hat
            << std::setw(22) << interval.str();
        if (row.bound) {
            log << std::setw(12) << std::setprecision(4) << std::min(1.0, *row.bound);
        } else {
            log << std::setw(12) << "";
        }
        log << "\n";
    }
}

}  // namespace

void run_command(ExperimentConfig config, const RunOverrides& overrides,
                 const std::string& out_path, std::ostream& log) {
    if (overrides.trials) config.trials = *overrides.trials;
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.budget) config.budget = *overrides.budget;
    validate_config(config);
    if (out_path.empty()) throw ConfigError("output path must not be empty");

    const long long n = config.resolved_budget();
    log << config.name << ": n=" << n << " trials=" << config.trials
        << " seed=" << config.seed << "\n";

    SweepResult sweep;
    if (config.kind == TaskKind::MBest) {
        sweep = sweep_over_m(config.instance(), config.name, config.strategies,
                             config.m_values, n, config.trials, config.seed,
                             overrides.threads);
    } else {
        sweep = sweep_multibandit(config.multibandit_instance(), config.name, n,
                                  config.trials, config.seed, overrides.threads);
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + out_path + "'");
    write_sweep_csv(sweep, config.trials, config.seed, out);
    out.flush();
    if (!out) throw Error("failed writing output file '" + out_path + "'");

    print_summary(sweep, log);
    log << "wrote " << out_path << "\n";
}

void bounds_command(const ExperimentConfig& config, std::ostream& out) {
    validate_config(config);
    const long long n = config.resolved_budget();
    out << "experiment,m,n,h1,h2,bound,sandwich_low,sandwich_high\n";

    auto emit = [&](int m, const ComplexityReport* report, double bound) {
        out << config.name << ',' << m << ',' << n << ',';
        if (report == nullptr) {
            out << "inf,inf,inf,inf,inf\n";
            return;
        }
        const double count = static_cast<double>(report->sorted_gaps.size());
        out << format_double(report->h1) << ',' << format_double(report->h2) << ','
            << format_double(std::min(1.0, bound)) << ','
            << format_double(report->h2) << ','
            << format_double(std::log(2.0 * count) * report->h2) << '\n';
    };

    if (config.kind == TaskKind::MBest) {
        for (int m : config.m_values) {
            try {
                const ComplexityReport report = complexity_m_best(config.means, m);
                emit(m, &report, bound_theorem1(n, config.num_arms(), report.h2));
            } catch (const InfeasibleComplexity&) {
                emit(m, nullptr, 0.0);
            }
        }
    } else {
        const auto multi = config.multibandit_instance();
        try {
            const ComplexityReport report = complexity_multibandit(multi);
            emit(0, &report,
                 bound_theorem2(n, multi.num_problems(), multi.arms_per_problem(),
                                report.h2));
        } catch (const InfeasibleComplexity&) {
            emit(0, nullptr, 0.0);
        }
    }
}

void complexity_command(const ExperimentConfig& config, std::optional<int> m,
                        std::ostream& out) {
    validate_config(config);

    if (config.kind == TaskKind::MultiBandit) {
        if (m) throw ConfigError("--m applies only to m_best tasks");
        const auto multi = config.multibandit_instance();
        const ComplexityReport report = complexity_multibandit(multi);
        out << config.name << ": M=" << multi.num_problems()
            << " K=" << multi.arms_per_problem() << "\n";
        out << "  H1 = " << format_double(report.h1)
            << "  H2 = " << format_double(report.h2)
            << "  contributing gaps = " << report.sorted_gaps.size() << "\n";
        out << "  suggested budget = " << suggest_budget_multibandit(multi) << "\n";
        return;
    }

    const int k = config.num_arms();
    std::vector<int> m_values = config.m_values;
    if (m) {
        if (*m < 1 || *m > k - 1) throw ConfigError("m must lie in 1..K-1");
        m_values = {*m};
    }

    out << config.name << ": K=" << k << "\n";
    out << std::left << std::setw(6) << "m" << std::setw(8) << "gaps"
        << std::setw(24) << "H1" << std::setw(24) << "H2" << "\n";
    for (int mv : m_values) {
        out << std::left << std::setw(6) << mv;
        try {
            const ComplexityReport report = complexity_m_best(config.means, mv);
            out << std::setw(8) << report.sorted_gaps.size() << std::setw(24)
                << format_double(report.h1) << std::setw(24)
                << format_double(report.h2) << "\n";
        } catch (const InfeasibleComplexity&) {
            out << std::setw(8) << 0 << std::setw(24) << "inf" << std::setw(24)
                << "inf" << "\n";
        }
    }
    if (m) {
        const GapProfile profile = gaps_m_best(config.means, *m);
        out << "per-arm gaps (m=" << *m << "):\n";
        for (std::size_t i = 0; i < profile.gaps.size(); ++i) {
            out << "  arm " << (i + 1) << ": ";
            if (profile.gaps[i]) out << format_double(*profile.gaps[i]);
            else out << "interchangeable";
            out << "\n";
        }
    }
    try {
        out << "suggested budget = " << suggest_budget(config.means, m_values) << "\n";
    } catch (const InfeasibleComplexity&) {
        out << "suggested budget = inf (every m is tie-degenerate)\n";
    }
}

void list_experiments(std::ostream& out) {
    const auto experiments = builtin_experiments();
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        const auto& config = experiments[i];
        out << (i + 1) << "  " << std::left << std::setw(24) << config.name
            << " K=" << std::setw(4) << config.num_arms() << " m=2.."
            << config.num_arms() - 1 << "  trials=" << config.trials
            << "  budget=auto\n";
    }
}

}  // namespace banditsim
