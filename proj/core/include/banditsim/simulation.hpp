#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banditsim/bandit.hpp"
#include "banditsim/strategies.hpp"

namespace banditsim {

// Identifies a strategy in simulations, sweeps and configs. The ordinal is
// fixed per kind (not per list position) so reordering a sweep's strategy
// list never changes cell seeds.
struct StrategySpec {
    enum class Kind { Uniform = 0, SuccessiveRejects = 1, Sar = 2, GapE = 3 };

    Kind kind = Kind::Sar;
    double gap_e_c = 2.0;

    static StrategySpec uniform() { return {Kind::Uniform, 0.0}; }
    static StrategySpec successive_rejects() { return {Kind::SuccessiveRejects, 0.0}; }
    static StrategySpec sar() { return {Kind::Sar, 0.0}; }
    static StrategySpec gap_e(double c) { return {Kind::GapE, c}; }

    std::string name() const;    // "uniform", "sr", "sar" or "gap_e"
    std::string params() const;  // "c=<value>" for gap_e, empty otherwise
    int ordinal() const { return static_cast<int>(kind); }

    bool operator==(const StrategySpec&) const = default;
};

// Builds a runnable strategy. gap_e_h1 must be set for Kind::GapE.
std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int k, int m,
                                        long long n,
                                        std::optional<double> gap_e_h1 = std::nullopt);

// Monte Carlo misidentification frequency.
struct ErrorEstimate {
    double p_hat = 0.0;
    long long trials = 0;
    long long errors = 0;
    double ci_low = 0.0;  // Wilson 95% interval
    double ci_high = 0.0;
    std::uint64_t master_seed = 0;
};

// Wilson score interval at 95% confidence, clamped so that
// 0 <= low <= errors/trials <= high <= 1 holds exactly.
std::pair<double, double> wilson_interval(long long errors, long long trials);

// Runs `trials` independent strategy runs on the substreams
// (master_seed, 0..trials-1) and counts tie-tolerant misidentifications.
// The result is a pure function of master_seed: it does not depend on
// `threads` (0 = one worker per hardware thread).
//
// Gap-E reads the true H1 of the task unless gap_e_h1 overrides it, the one
// place simulation knowledge flows into a strategy parameter.
ErrorEstimate estimate_error(const BanditInstance& instance, const StrategySpec& spec,
                             int m, long long n, long long trials,
                             std::uint64_t master_seed, int threads = 0,
                             std::optional<double> gap_e_h1 = std::nullopt);

ErrorEstimate estimate_error_multibandit(const MultiBanditInstance& multi, long long n,
                                         long long trials, std::uint64_t master_seed,
                                         int threads = 0);

// Exact misidentification probability by weighted traversal of the
// strategy's decision tree, branching on every Bernoulli pull. Requires
// n <= 22 (at most 2^n leaves); throws EnumerationTooLarge beyond that.
double exact_error_enumeration(const BanditInstance& instance, const StrategySpec& spec,
                               int m, long long n);

// Budget heuristic: the ceiling of the largest feasible H1 over the given
// m values (infeasible m are skipped; all infeasible throws
// InfeasibleComplexity). Values within a relative 1e-9 of an integer snap
// to it first, so decimal means do not inflate round targets.
long long suggest_budget(const std::vector<double>& means, const std::vector<int>& m_values);
long long suggest_budget(const BanditInstance& instance, const std::vector<int>& m_values);

// Same rule applied to the multi-bandit hardness H1.
long long suggest_budget_multibandit(const MultiBanditInstance& multi);

struct SweepRow {
    std::string experiment;
    StrategySpec strategy;
    int m = 0;  // 0 on multi-bandit rows
    long long n = 0;
    ErrorEstimate estimate;
    std::optional<double> bound;  // theorem bound on SAR rows, unclamped
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// One estimate per (strategy, m), each on cell_seed(master_seed, ordinal, m)
// so results are stable under adding strategies or m values.
SweepResult sweep_over_m(const BanditInstance& instance, const std::string& experiment,
                         const std::vector<StrategySpec>& strategies,
                         const std::vector<int>& m_values, long long n,
                         long long trials, std::uint64_t master_seed, int threads = 0);

SweepResult sweep_multibandit(const MultiBanditInstance& multi,
                              const std::string& experiment, long long n,
                              long long trials, std::uint64_t master_seed,
                              int threads = 0);

}  // namespace banditsim
