#pragma once

#include <memory>
#include <vector>

#include "banditsim/bandit.hpp"

namespace banditsim {

// Cumulative per-arm pull targets n_k, one per elimination phase.
struct PhaseSchedule {
    std::vector<long long> cumulative;
    double normalizer = 0.0;  // the half-harmonic value the targets divide by

    int phase_count() const { return static_cast<int>(cumulative.size()); }
};

// Schedule of successive accepts and rejects over k arms: K-1 phases with
// n_k = ceil((1/olog(K)) * (n-K)/(K+1-k)). Throws BudgetTooSmall if n <= K.
PhaseSchedule sar_schedule(long long n, int k);

// Schedule of m-best successive rejects: K-m phases normalized by
// overline_log_m(K, m) so the full budget fits; plain SR at m = 1.
PhaseSchedule sr_schedule(long long n, int k, int m);

enum class EventKind { Accept, Reject };

struct PhaseEvent {
    int phase = 0;
    int problem = 1;  // always 1 for single-problem tasks
    int arm = 0;
    EventKind kind = EventKind::Reject;

    bool operator==(const PhaseEvent&) const = default;
};

struct SelectionResult {
    // m-best: the selected arms in ascending order.
    // multi-bandit: entry p-1 is the arm selected for problem p.
    std::vector<int> selected;
    std::vector<long long> pulls;  // per flat arm id, 0-based storage
    std::vector<PhaseEvent> events;
    long long total_pulls = 0;
};

// A strategy sees the bandit only through this protocol. It never reads
// true means, and its behavior is a deterministic function of the observed
// reward sequence: every tie breaks toward the lowest arm index
// (lexicographic (problem, arm) in the multi-bandit case).
class Strategy {
public:
    virtual ~Strategy() = default;

    virtual int num_arms() const = 0;  // flat arm count (K, or M*K)
    virtual bool done() const = 0;
    // Flat 1-based id of the arm to pull next; idempotent until observe().
    virtual int next_pull() const = 0;
    virtual void observe(double reward) = 0;
    virtual SelectionResult finish() const = 0;  // requires done()
    virtual std::unique_ptr<Strategy> clone() const = 0;
};

// Distance of each empirical mean to the top-m_active selection boundary:
// sort the means descending; entries ranked <= m_active measure against the
// (m_active+1)-th value, the rest against the m_active-th. Output order
// matches the input.
std::vector<double> empirical_gaps(const std::vector<double>& means, int m_active);

std::unique_ptr<Strategy> make_sar_m_best(int k, int m, long long n);
std::unique_ptr<Strategy> make_sar_multibandit(int m_problems, int k, long long n);
std::unique_ptr<Strategy> make_successive_rejects(int k, int m, long long n);
std::unique_ptr<Strategy> make_uniform(int k, int m, long long n);
std::unique_ptr<Strategy> make_gap_e(int k, int m, long long n, double c, double h1_m_best);

// Drive a strategy against live rewards until it finishes.
SelectionResult run_strategy(Strategy& strategy,
                             const std::vector<ArmDistribution>& flat_arms,
                             RngStream& rng);

SelectionResult run_sar_m_best(const BanditInstance& instance, int m, long long n,
                               RngStream& rng);
SelectionResult run_sar_multibandit(const MultiBanditInstance& multi, long long n,
                                    RngStream& rng);
SelectionResult run_sr_m_best(const BanditInstance& instance, int m, long long n,
                              RngStream& rng);
SelectionResult run_uniform(const BanditInstance& instance, int m, long long n,
                            RngStream& rng);
SelectionResult run_gap_e(const BanditInstance& instance, int m, long long n,
                          double c, double h1_m_best, RngStream& rng);

}  // namespace banditsim
