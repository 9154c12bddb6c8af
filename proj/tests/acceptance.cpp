// Acceptance suite: statistical and exact end-to-end checks of the whole
// library, printed as one pass/fail line per criterion. Exits nonzero if
// any criterion fails. Release build strongly recommended.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "banditsim/commands.hpp"
#include "banditsim/complexity.hpp"
#include "banditsim/errors.hpp"
#include "banditsim/experiments.hpp"
#include "banditsim/simulation.hpp"

using namespace banditsim;

namespace {

constexpr int kThreads = 0;  // all hardware threads

double binomial_sigma(double p, long long trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

// ---------------------------------------------------------------------------
// 1. Monte Carlo estimates match exact enumeration on tiny instances.

bool oracle_equivalence(std::ostream& out) {
    const std::vector<StrategySpec> specs = {
        StrategySpec::uniform(), StrategySpec::successive_rejects(),
        StrategySpec::sar(), StrategySpec::gap_e(2.0)};
    std::mt19937_64 gen(20240517);
    const long long trials = 100000;
    int matches = 0;
    const int cases = 25;
    for (int index = 0; index < cases; ++index) {
        const int k = 2 + static_cast<int>(gen() % 2);
        std::vector<double> means;
        do {
            means.clear();
            for (int i = 0; i < k; ++i) {
                means.push_back(static_cast<double>(gen() % 11) / 10.0);
            }
        } while (std::count(means.begin(), means.end(), means[0]) == k);
        const long long n =
            k + 1 + static_cast<long long>(gen() % static_cast<unsigned>(10 - k));
        const StrategySpec& spec = specs[index % specs.size()];

        const auto instance = BanditInstance::bernoulli(means);
        const double exact = exact_error_enumeration(instance, spec, 1, n);
        const auto estimate = estimate_error(instance, spec, 1, n, trials,
                                             7000 + index, kThreads);
        const double tolerance = 3.0 * binomial_sigma(exact, trials) + 1e-12;
        const bool match = std::abs(estimate.p_hat - exact) <= tolerance;
        matches += match;
        if (!match) {
            out << "    case " << index << " (" << spec.name() << ", K=" << k
                << ", n=" << n << "): exact=" << exact << " p_hat=" << estimate.p_hat
                << " tolerance=" << tolerance << "\n";
        }
    }
    out << "    " << matches << "/" << cases << " cases within 3 binomial sigma\n";
    return matches >= 24;
}

// ---------------------------------------------------------------------------
// 2. The theorem bound holds empirically on the three-arm instance.

bool theorem1_empirical(std::ostream& out) {
    const auto instance = BanditInstance::bernoulli({0.9, 0.5, 0.1});
    const long long trials = 100000;
    const auto estimate =
        estimate_error(instance, StrategySpec::sar(), 1, 1000, trials, 424242,
                       kThreads);
    const double limit =
        0.01018 + 3.0 * binomial_sigma(estimate.p_hat, trials);
    out << "    p_hat=" << estimate.p_hat << " bound+3se=" << limit << "\n";
    return estimate.p_hat <= limit;
}

// ---------------------------------------------------------------------------
// 3. The hardness sandwich holds exactly on random instances.

bool sandwich(std::ostream& out) {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    int failures = 0;
    for (int round = 0; round < 1000; ++round) {
        const int k = 2 + static_cast<int>(gen() % 29);
        std::vector<double> means;
        while (static_cast<int>(means.size()) < k) {
            const double value = uniform(gen);
            if (std::find(means.begin(), means.end(), value) == means.end()) {
                means.push_back(value);
            }
        }
        const int m = 1 + static_cast<int>(gen() % (k - 1));
        const auto report = complexity_m_best(means, m);
        const double count = static_cast<double>(report.sorted_gaps.size());
        if (!(report.h2 <= report.h1 &&
              report.h1 <= std::log(2.0 * count) * report.h2)) {
            ++failures;
        }
    }
    out << "    " << (1000 - failures) << "/1000 instances satisfy the sandwich\n";
    return failures == 0;
}

// ---------------------------------------------------------------------------
// 4. No strategy overdraws its budget; uniform spends it exactly.

bool budget_law(std::ostream& out) {
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    int checked = 0;
    for (int round = 0; round < 700; ++round) {
        const int k = 2 + static_cast<int>(gen() % 14);
        const int m = 1 + static_cast<int>(gen() % (k - 1));
        const long long n = k + 1 + static_cast<long long>(gen() % 2000);
        std::vector<double> means;
        for (int i = 0; i < k; ++i) means.push_back(uniform(gen));
        const auto instance = BanditInstance::bernoulli(means);

        RngStream r1(1000, round), r2(1001, round), r3(1002, round);
        if (run_sar_m_best(instance, m, n, r1).total_pulls > n) return false;
        if (run_sr_m_best(instance, m, n, r2).total_pulls > n) return false;
        if (run_uniform(instance, m, n, r3).total_pulls != n) return false;
        ++checked;
    }
    for (int round = 0; round < 300; ++round) {
        const int problems = 1 + static_cast<int>(gen() % 4);
        const int k = 2 + static_cast<int>(gen() % 5);
        const long long n =
            problems * k + 1 + static_cast<long long>(gen() % 2000);
        std::vector<BanditInstance> bandits;
        for (int p = 0; p < problems; ++p) {
            std::vector<double> means;
            for (int i = 0; i < k; ++i) means.push_back(uniform(gen));
            bandits.emplace_back(BanditInstance::bernoulli(means));
        }
        const MultiBanditInstance multi(std::move(bandits));
        RngStream rng(1003, round);
        if (run_sar_multibandit(multi, n, rng).total_pulls > n) return false;
        ++checked;
    }
    out << "    " << checked << "/1000 random (n, K, m) triples within budget\n";
    return checked == 1000;
}

// ---------------------------------------------------------------------------
// 5. On point masses with a strict selection boundary, nothing ever errs.

bool point_mass_soundness(std::ostream& out) {
    std::mt19937_64 gen(512);
    int sound = 0;
    for (int round = 0; round < 100; ++round) {
        const int k = 2 + static_cast<int>(gen() % 9);
        std::vector<double> means;
        std::vector<int> feasible;
        do {
            means.clear();
            for (int i = 0; i < k; ++i) {
                means.push_back(static_cast<double>(gen() % 21) / 20.0);
            }
            std::vector<double> sorted(means);
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            feasible.clear();
            for (int m = 1; m <= k - 1; ++m) {
                if (sorted[m - 1] > sorted[m]) feasible.push_back(m);
            }
        } while (feasible.empty());
        const int m = feasible[gen() % feasible.size()];
        const long long n = k + 1 + static_cast<long long>(gen() % 400);
        const auto instance = BanditInstance::point_mass(means);
        const double h1 = complexity_m_best(means, m).h1;

        RngStream r1(2000, round), r2(2001, round), r3(2002, round), r4(2003, round);
        const bool ok =
            is_correct_selection(instance, m, run_sar_m_best(instance, m, n, r1).selected) &&
            is_correct_selection(instance, m, run_sr_m_best(instance, m, n, r2).selected) &&
            is_correct_selection(instance, m, run_uniform(instance, m, n, r3).selected) &&
            is_correct_selection(instance, m,
                                 run_gap_e(instance, m, n, 2.0, h1, r4).selected);
        if (!ok) {
            out << "    m-best instance " << round << " misidentified\n";
            return false;
        }
        ++sound;
    }
    for (int round = 0; round < 100; ++round) {
        const int problems = 1 + static_cast<int>(gen() % 4);
        const int k = 2 + static_cast<int>(gen() % 5);
        std::vector<BanditInstance> bandits;
        for (int p = 0; p < problems; ++p) {
            std::vector<double> means;
            do {
                means.clear();
                for (int i = 0; i < k; ++i) {
                    means.push_back(static_cast<double>(gen() % 21) / 20.0);
                }
                std::vector<double> sorted(means);
                std::sort(sorted.begin(), sorted.end(), std::greater<>());
                if (sorted[0] > sorted[1]) break;
            } while (true);
            bandits.emplace_back(BanditInstance::point_mass(means));
        }
        const MultiBanditInstance multi(std::move(bandits));
        const long long n = problems * k + 1 + static_cast<long long>(gen() % 400);
        RngStream rng(2004, round);
        if (!is_correct_multibandit(multi, run_sar_multibandit(multi, n, rng).selected)) {
            out << "    multibandit instance " << round << " misidentified\n";
            return false;
        }
        ++sound;
    }
    out << "    " << sound << "/200 point-mass instances identified correctly\n";
    return sound == 200;
}

// ---------------------------------------------------------------------------
// 6. Desk-scale reproduction of the qualitative experiment findings.

struct CellTable {
    std::vector<int> m_values;
    // [strategy ordinal][index into m_values]
    std::vector<std::vector<double>> p;
    long long trials = 0;
};

CellTable run_experiment(const ExperimentConfig& config, long long trials) {
    const long long n = config.resolved_budget();
    const auto sweep = sweep_over_m(config.instance(), config.name, config.strategies,
                                    config.m_values, n, trials, config.seed, kThreads);
    CellTable table;
    table.m_values = config.m_values;
    table.trials = trials;
    table.p.assign(4, std::vector<double>(config.m_values.size(), 0.0));
    for (const auto& row : sweep.rows) {
        const auto position = std::find(table.m_values.begin(), table.m_values.end(),
                                        row.m) -
                              table.m_values.begin();
        table.p[row.strategy.ordinal()][position] = row.estimate.p_hat;
    }
    return table;
}

bool qualitative_reproduction(std::ostream& out) {
    const auto experiments = builtin_experiments();
    const long long trials = 5000;
    bool all_ok = true;
    for (int which : {0, 3, 4}) {  // experiments 1, 4 and 5
        const auto& config = experiments[which];
        const CellTable table = run_experiment(config, trials);
        const auto& uniform_p = table.p[StrategySpec::uniform().ordinal()];
        const auto& sr_p = table.p[StrategySpec::successive_rejects().ordinal()];
        const auto& sar_p = table.p[StrategySpec::sar().ordinal()];
        const auto& gap_p = table.p[StrategySpec::gap_e(2.0).ordinal()];

        auto pooled = [&](double a, double b) {
            return std::sqrt(a * (1 - a) / trials + b * (1 - b) / trials);
        };

        // (a) sar never falls behind uniform
        bool sar_ok = true;
        for (std::size_t i = 0; i < table.m_values.size(); ++i) {
            if (sar_p[i] > uniform_p[i] + 2.0 * pooled(sar_p[i], uniform_p[i])) {
                out << "    " << config.name << ": sar worse than uniform at m="
                    << table.m_values[i] << " (" << sar_p[i] << " vs " << uniform_p[i]
                    << ")\n";
                sar_ok = false;
            }
        }

        // (b) sr falls behind uniform somewhere beyond m = 1
        bool sr_beaten = false;
        for (std::size_t i = 0; i < table.m_values.size(); ++i) {
            if (table.m_values[i] > 1 &&
                sr_p[i] > uniform_p[i] + 2.0 * pooled(sr_p[i], uniform_p[i])) {
                sr_beaten = true;
                break;
            }
        }
        if (!sr_beaten) {
            out << "    " << config.name << ": sr never significantly worse than uniform\n";
        }

        // (c) gap_e at least matches sar on average over m
        double gap_mean = 0.0;
        double sar_mean = 0.0;
        double variance = 0.0;
        for (std::size_t i = 0; i < table.m_values.size(); ++i) {
            gap_mean += gap_p[i];
            sar_mean += sar_p[i];
            variance += gap_p[i] * (1 - gap_p[i]) / trials +
                        sar_p[i] * (1 - sar_p[i]) / trials;
        }
        const double count = static_cast<double>(table.m_values.size());
        gap_mean /= count;
        sar_mean /= count;
        const double mean_se = std::sqrt(variance) / count;
        const bool gap_ok = gap_mean <= sar_mean + 2.0 * mean_se;
        if (!gap_ok) {
            out << "    " << config.name << ": gap_e mean " << gap_mean
                << " above sar mean " << sar_mean << " + 2se\n";
        }

        out << "    " << config.name << ": sar<=uniform " << (sar_ok ? "yes" : "NO")
            << ", sr beaten " << (sr_beaten ? "yes" : "NO") << ", gap_e mean "
            << gap_mean << " vs sar mean " << sar_mean << "\n";
        all_ok = all_ok && sar_ok && sr_beaten && gap_ok;
    }
    return all_ok;
}

// ---------------------------------------------------------------------------
// 7. The multi-bandit run reproduces the exact hand trace.

bool multibandit_trace(std::ostream& out) {
    if (sar_schedule(40, 4).cumulative != std::vector<long long>{6, 8, 12}) {
        out << "    schedule mismatch\n";
        return false;
    }
    const MultiBanditInstance multi({BanditInstance::point_mass({0.9, 0.1}),
                                     BanditInstance::point_mass({0.6, 0.4})});
    RngStream rng(1, 0);
    const auto result = run_sar_multibandit(multi, 40, rng);
    const std::vector<PhaseEvent> expected = {
        {1, 1, 2, EventKind::Reject},
        {2, 1, 1, EventKind::Accept},
        {3, 2, 2, EventKind::Reject},
        {4, 2, 1, EventKind::Accept},
    };
    const bool ok = result.events == expected && result.total_pulls == 38 &&
                    result.selected == std::vector<int>{1, 1};
    out << "    events " << result.events.size() << ", total pulls "
        << result.total_pulls << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// 8. Reruns with one seed write byte-identical CSVs.

bool deterministic_csv(std::ostream& out) {
    auto config = builtin_experiments()[2];  // geometric, K = 4
    config.trials = 500;

    auto read = [](const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream content;
        content << in.rdbuf();
        return content.str();
    };

    const auto path_a = std::filesystem::temp_directory_path() / "banditsim_acc_a.csv";
    const auto path_b = std::filesystem::temp_directory_path() / "banditsim_acc_b.csv";
    std::ostringstream sink;
    RunOverrides first;
    first.threads = 1;
    run_command(config, first, path_a.string(), sink);
    RunOverrides second;
    second.threads = 4;  // worker count must not leak into the output
    run_command(config, second, path_b.string(), sink);
    const std::string bytes_a = read(path_a);
    const bool ok = !bytes_a.empty() && bytes_a == read(path_b);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
    out << "    " << bytes_a.size() << " bytes, reruns "
        << (ok ? "identical" : "DIFFER") << "\n";
    return ok;
}

struct Criterion {
    std::string name;
    double time_limit_seconds;
    std::function<bool(std::ostream&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"oracle equivalence (25 tiny cases, 1e5 trials)", 120.0, oracle_equivalence},
        {"theorem-1 bound holds empirically (n=1000, 1e5 trials)", 60.0,
         theorem1_empirical},
        {"hardness sandwich on 1000 random instances", 1.0, sandwich},
        {"budget law on 1000 random (n,K,m) triples", 120.0, budget_law},
        {"point-mass soundness on 200 instances", 60.0, point_mass_soundness},
        {"qualitative reproduction (experiments 1, 4, 5)", 900.0,
         qualitative_reproduction},
        {"multi-bandit hand trace", 10.0, multibandit_trace},
        {"byte-identical csv reruns", 120.0, deterministic_csv},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        std::ostringstream detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& error) {
            detail << "    exception: " << error.what() << "\n";
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (seconds > criterion.time_limit_seconds) {
            detail << "    over time limit (" << criterion.time_limit_seconds
                   << "s)\n";
            ok = false;
        }
        failures += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": "
                  << criterion.name << "  [" << std::fixed << std::setprecision(1)
                  << seconds << "s]\n"
                  << detail.str();
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
