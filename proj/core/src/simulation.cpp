#include "banditsim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "banditsim/complexity.hpp"
#include "banditsim/errors.hpp"
#include "text.hpp"

namespace banditsim {

std::string StrategySpec::name() const {
    switch (kind) {
        case Kind::Uniform: return "uniform";
        case Kind::SuccessiveRejects: return "sr";
        case Kind::Sar: return "sar";
        case Kind::GapE: return "gap_e";
    }
    return "";
}

std::string StrategySpec::params() const {
    if (kind != Kind::GapE) return "";
    return "c=" + detail::format_double(gap_e_c);
}

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int k, int m,
                                        long long n, std::optional<double> gap_e_h1) {
    switch (spec.kind) {
        case StrategySpec::Kind::Uniform: return make_uniform(k, m, n);
        case StrategySpec::Kind::SuccessiveRejects: return make_successive_rejects(k, m, n);
        case StrategySpec::Kind::Sar: return make_sar_m_best(k, m, n);
        case StrategySpec::Kind::GapE:
            if (!gap_e_h1) throw std::invalid_argument("gap_e needs an H1 value");
            return make_gap_e(k, m, n, spec.gap_e_c, *gap_e_h1);
    }
    throw std::invalid_argument("unknown strategy kind");
}

std::pair<double, double> wilson_interval(long long errors, long long trials) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (errors < 0 || errors > trials) throw std::invalid_argument("errors out of range");
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (p + z2 / (2.0 * nt)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    // The interval always contains the point estimate; the clamps only trim
    // floating-point residue at p = 0 or 1.
    const double low = std::min(std::max(center - half, 0.0), p);
    const double high = std::max(std::min(center + half, 1.0), p);
    return {low, high};
}

namespace {

int resolve_threads(int threads, long long trials) {
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    unsigned resolved = threads > 0 ? static_cast<unsigned>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
    resolved = std::min<unsigned long long>(resolved, static_cast<unsigned long long>(trials));
    return static_cast<int>(std::max(1u, resolved));
}

// Counts misidentifications over [0, trials) substreams; the count is a sum
// over independent trials, so any partition across workers yields the same
// total.
ErrorEstimate estimate_by_trials(
    const std::vector<ArmDistribution>& flat_arms,
    const std::function<std::unique_ptr<Strategy>()>& fresh_strategy,
    const std::function<bool(const SelectionResult&)>& incorrect, long long trials,
    std::uint64_t master_seed, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");

    const int workers = resolve_threads(threads, trials);
    std::vector<long long> errors_per_worker(workers, 0);

    auto run_range = [&](long long first, long long last, long long& errors) {
        for (long long trial = first; trial < last; ++trial) {
            RngStream rng(master_seed, static_cast<std::uint64_t>(trial));
            const auto strategy = fresh_strategy();
            const SelectionResult result = run_strategy(*strategy, flat_arms, rng);
            if (incorrect(result)) ++errors;
        }
    };

    if (workers == 1) {
        run_range(0, trials, errors_per_worker[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const long long chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long long first = w * chunk;
            const long long last = std::min(trials, first + chunk);
            pool.emplace_back(run_range, first, last, std::ref(errors_per_worker[w]));
        }
        for (auto& thread : pool) thread.join();
    }

    ErrorEstimate estimate;
    estimate.trials = trials;
    for (long long e : errors_per_worker) estimate.errors += e;
    estimate.p_hat = static_cast<double>(estimate.errors) / static_cast<double>(trials);
    std::tie(estimate.ci_low, estimate.ci_high) =
        wilson_interval(estimate.errors, trials);
    estimate.master_seed = master_seed;
    return estimate;
}

std::optional<double> gap_e_h1_for(const StrategySpec& spec,
                                   const BanditInstance& instance, int m,
                                   std::optional<double> override_h1) {
    if (spec.kind != StrategySpec::Kind::GapE) return std::nullopt;
    if (override_h1) return override_h1;
    return complexity_m_best(instance.true_means(), m).h1;
}

}  // namespace

ErrorEstimate estimate_error(const BanditInstance& instance, const StrategySpec& spec,
                             int m, long long n, long long trials,
                             std::uint64_t master_seed, int threads,
                             std::optional<double> gap_e_h1) {
    const int k = instance.num_arms();
    const std::optional<double> h1 = gap_e_h1_for(spec, instance, m, gap_e_h1);
    auto fresh = [&spec, k, m, n, h1] { return make_strategy(spec, k, m, n, h1); };
    fresh();  // validate preconditions once, before any worker starts
    auto incorrect = [&instance, m](const SelectionResult& result) {
        return !is_correct_selection(instance, m, result.selected);
    };
    return estimate_by_trials(instance.arms(), fresh, incorrect, trials, master_seed,
                              threads);
}

ErrorEstimate estimate_error_multibandit(const MultiBanditInstance& multi, long long n,
                                         long long trials, std::uint64_t master_seed,
                                         int threads) {
    const int m_problems = multi.num_problems();
    const int k = multi.arms_per_problem();
    auto fresh = [m_problems, k, n] { return make_sar_multibandit(m_problems, k, n); };
    fresh();
    auto incorrect = [&multi](const SelectionResult& result) {
        return !is_correct_multibandit(multi, result.selected);
    };
    return estimate_by_trials(multi.flat_arms(), fresh, incorrect, trials, master_seed,
                              threads);
}

namespace {

// Weighted traversal of the decision tree. The strategy is advanced in
// place along point-mass pulls and the failure branch; the success branch
// runs on a clone, so the number of copies equals the number of Bernoulli
// branch points.
double enumerate_error(Strategy& strategy, const std::vector<ArmDistribution>& arms,
                       const std::function<bool(const SelectionResult&)>& incorrect) {
    for (;;) {
        if (strategy.done()) return incorrect(strategy.finish()) ? 1.0 : 0.0;
        const ArmDistribution& dist = arms[strategy.next_pull() - 1];
        if (dist.kind() == ArmDistribution::Kind::PointMass) {
            strategy.observe(dist.parameter());
            continue;
        }
        const double p = dist.parameter();
        if (p <= 0.0) {
            strategy.observe(0.0);
            continue;
        }
        if (p >= 1.0) {
            strategy.observe(1.0);
            continue;
        }
        const auto success_branch = strategy.clone();
        success_branch->observe(1.0);
        const double on_success = enumerate_error(*success_branch, arms, incorrect);
        strategy.observe(0.0);
        return p * on_success + (1.0 - p) * enumerate_error(strategy, arms, incorrect);
    }
}

}  // namespace

double exact_error_enumeration(const BanditInstance& instance, const StrategySpec& spec,
                               int m, long long n) {
    if (n > 22) {
        throw EnumerationTooLarge("enumeration supports n <= 22 (up to 2^n outcomes)");
    }
    const std::optional<double> h1 = gap_e_h1_for(spec, instance, m, std::nullopt);
    const auto strategy = make_strategy(spec, instance.num_arms(), m, n, h1);
    auto incorrect = [&instance, m](const SelectionResult& result) {
        return !is_correct_selection(instance, m, result.selected);
    };
    return enumerate_error(*strategy, instance.arms(), incorrect);
}

namespace {

// ceil with a snap: H1 values that are integers up to floating-point noise
// (e.g. gaps like 0.5 - 0.4) round to that integer instead of one past it.
long long ceil_snapped(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("budget source must be positive");
    const double rounded = std::nearbyint(value);
    if (std::abs(value - rounded) <= 1e-9 * std::max(1.0, std::abs(value))) {
        return static_cast<long long>(rounded);
    }
    return static_cast<long long>(std::ceil(value));
}

}  // namespace

long long suggest_budget(const std::vector<double>& means,
                         const std::vector<int>& m_values) {
    if (m_values.empty()) throw std::invalid_argument("need at least one m value");
    std::optional<double> max_h1;
    for (int m : m_values) {
        try {
            const double h1 = complexity_m_best(means, m).h1;
            max_h1 = max_h1 ? std::max(*max_h1, h1) : h1;
        } catch (const InfeasibleComplexity&) {
            // this m cannot be misidentified; it does not constrain the budget
        }
    }
    if (!max_h1) {
        throw InfeasibleComplexity("no m value has a feasible hardness");
    }
    return ceil_snapped(*max_h1);
}

long long suggest_budget(const BanditInstance& instance,
                         const std::vector<int>& m_values) {
    return suggest_budget(instance.true_means(), m_values);
}

long long suggest_budget_multibandit(const MultiBanditInstance& multi) {
    return ceil_snapped(complexity_multibandit(multi).h1);
}

SweepResult sweep_over_m(const BanditInstance& instance, const std::string& experiment,
                         const std::vector<StrategySpec>& strategies,
                         const std::vector<int>& m_values, long long n,
                         long long trials, std::uint64_t master_seed, int threads) {
    const std::vector<double> means = instance.true_means();
    SweepResult sweep;
    sweep.rows.reserve(strategies.size() * m_values.size());
    for (const StrategySpec& spec : strategies) {
        for (int m : m_values) {
            SweepRow row;
            row.experiment = experiment;
            row.strategy = spec;
            row.m = m;
            row.n = n;
            const std::uint64_t seed =
                cell_seed(master_seed, static_cast<std::uint64_t>(spec.ordinal()),
                          static_cast<std::uint64_t>(m));
            row.estimate = estimate_error(instance, spec, m, n, trials, seed, threads);
            if (spec.kind == StrategySpec::Kind::Sar) {
                try {
                    row.bound =
                        bound_theorem1(n, instance.num_arms(),
                                       complexity_m_best(means, m).h2);
                } catch (const InfeasibleComplexity&) {
                }
            }
            sweep.rows.push_back(std::move(row));
        }
    }
    return sweep;
}

SweepResult sweep_multibandit(const MultiBanditInstance& multi,
                              const std::string& experiment, long long n,
                              long long trials, std::uint64_t master_seed,
                              int threads) {
    SweepRow row;
    row.experiment = experiment;
    row.strategy = StrategySpec::sar();
    row.m = 0;
    row.n = n;
    const std::uint64_t seed =
        cell_seed(master_seed, static_cast<std::uint64_t>(row.strategy.ordinal()), 0);
    row.estimate = estimate_error_multibandit(multi, n, trials, seed, threads);
    try {
        row.bound = bound_theorem2(n, multi.num_problems(), multi.arms_per_problem(),
                                   complexity_multibandit(multi).h2);
    } catch (const InfeasibleComplexity&) {
    }
    SweepResult sweep;
    sweep.rows.push_back(std::move(row));
    return sweep;
}

}  // namespace banditsim
