#include "banditsim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "banditsim/complexity.hpp"
#include "banditsim/errors.hpp"

namespace banditsim {

namespace {

PhaseSchedule elimination_schedule(long long n, int k, int phases, double normalizer) {
    if (k < 2) throw std::invalid_argument("need K >= 2 arms");
    if (n <= k) throw BudgetTooSmall("budget must exceed the number of arms");
    PhaseSchedule schedule;
    schedule.normalizer = normalizer;
    schedule.cumulative.reserve(phases);
    const double inv = 1.0 / normalizer;
    for (int phase = 1; phase <= phases; ++phase) {
        const double value = inv * static_cast<double>(n - k) / (k + 1 - phase);
        schedule.cumulative.push_back(static_cast<long long>(std::ceil(value)));
    }
    return schedule;
}

struct RunningStats {
    long long count = 0;
    double sum = 0.0;

    double mean() const { return count > 0 ? sum / count : 0.0; }
};

// Sorting positions by (mean descending, position ascending) fixes a unique
// order even under empirical ties.
void order_by_mean(const std::vector<double>& means, std::vector<int>& order) {
    order.resize(means.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (means[a] != means[b]) return means[a] > means[b];
        return a < b;
    });
}

void gaps_into(const std::vector<double>& means, int m_active,
               std::vector<int>& order, std::vector<double>& out) {
    order_by_mean(means, order);
    const double upper = means[order[m_active - 1]];
    const double lower = means[order[m_active]];
    out.resize(means.size());
    for (int rank = 0; rank < static_cast<int>(order.size()); ++rank) {
        const int i = order[rank];
        out[i] = rank < m_active ? means[i] - lower : upper - means[i];
    }
}

// Shared pull loop of the phase-based strategies: each phase pulls every
// active arm up to the cumulative target, arm ids ascending.
class PhasedStrategy : public Strategy {
public:
    bool done() const final { return done_; }

    int next_pull() const final {
        if (done_) throw std::logic_error("strategy is finished");
        return active_[cursor_];
    }

    void observe(double reward) final {
        if (done_) throw std::logic_error("strategy is finished");
        auto& stats = stats_[active_[cursor_] - 1];
        ++stats.count;
        stats.sum += reward;
        ++total_pulls_;
        if (--remaining_ > 0) return;
        if (++cursor_ < active_.size()) {
            remaining_ = delta_;
            return;
        }
        prev_cumulative_ = schedule_.cumulative[phase_ - 1];
        close_phase();
        advance();
    }

protected:
    PhasedStrategy(int flat_arms, PhaseSchedule schedule)
        : schedule_(std::move(schedule)), stats_(flat_arms) {
        active_.resize(flat_arms);
        std::iota(active_.begin(), active_.end(), 1);
    }

    // Deactivate exactly one arm based on the current empirical means.
    virtual void close_phase() = 0;
    // True once the output is determined; no further phases run.
    virtual bool output_ready() const = 0;
    // Called once when the run completes, with phase_ still at the last
    // completed phase.
    virtual void conclude() {}

    // Starts phases until one actually needs pulls; phases whose cumulative
    // target has not advanced deactivate on unchanged means.
    void advance() {
        while (!done_) {
            if (output_ready()) {
                conclude();
                done_ = true;
                return;
            }
            ++phase_;
            delta_ = schedule_.cumulative[phase_ - 1] - prev_cumulative_;
            if (delta_ == 0) {
                close_phase();
                continue;
            }
            cursor_ = 0;
            remaining_ = delta_;
            return;
        }
    }

    double active_mean(std::size_t position) const {
        return stats_[active_[position] - 1].mean();
    }

    SelectionResult base_result() const {
        if (!done_) throw std::logic_error("strategy is not finished");
        SelectionResult result;
        result.pulls.reserve(stats_.size());
        for (const auto& stats : stats_) result.pulls.push_back(stats.count);
        result.events = events_;
        result.total_pulls = total_pulls_;
        return result;
    }

    PhaseSchedule schedule_;
    std::vector<RunningStats> stats_;
    std::vector<int> active_;  // ascending flat arm ids
    std::vector<PhaseEvent> events_;
    int phase_ = 0;
    long long prev_cumulative_ = 0;
    long long total_pulls_ = 0;

private:
    long long delta_ = 0;
    long long remaining_ = 0;
    std::size_t cursor_ = 0;
    bool done_ = false;
};

class SarMBest final : public PhasedStrategy {
public:
    SarMBest(int k, int m, long long n)
        : PhasedStrategy(k, sar_schedule(n, k)), k_(k), m_(m) {
        if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");
        m_left_ = m;
        advance();
    }

    int num_arms() const override { return k_; }

    SelectionResult finish() const override {
        SelectionResult result = base_result();
        result.selected = accepted_;
        std::sort(result.selected.begin(), result.selected.end());
        return result;
    }

    std::unique_ptr<Strategy> clone() const override {
        return std::make_unique<SarMBest>(*this);
    }

private:
    bool output_ready() const override {
        return m_left_ == 0 || m_left_ == static_cast<int>(active_.size());
    }

    void conclude() override {
        if (m_left_ == 0) return;  // all m accepts happened during the phases
        // As many arms are left to find as are active: every one of them
        // must be accepted, and the gap rule would have no arm to compare
        // against below the boundary.
        for (int arm : active_) {
            events_.push_back({phase_ + 1, 1, arm, EventKind::Accept});
            accepted_.push_back(arm);
        }
        active_.clear();
        m_left_ = 0;
    }

    void close_phase() override {
        std::vector<double> means(active_.size());
        for (std::size_t i = 0; i < active_.size(); ++i) means[i] = active_mean(i);
        std::vector<int> order;
        std::vector<double> gaps;
        gaps_into(means, m_left_, order, gaps);

        std::size_t target = 0;
        for (std::size_t i = 1; i < gaps.size(); ++i) {
            if (gaps[i] > gaps[target]) target = i;
        }
        // (m_left_+1)-th largest empirical mean among the active arms
        const double boundary = means[order[m_left_]];
        const int arm = active_[target];
        const bool accepted = means[target] > boundary;

        active_.erase(active_.begin() + target);
        events_.push_back(
            {phase_, 1, arm, accepted ? EventKind::Accept : EventKind::Reject});
        if (accepted) {
            accepted_.push_back(arm);
            --m_left_;
        }
    }

    int k_;
    int m_;
    int m_left_ = 0;
    std::vector<int> accepted_;
};

class SarMultiBandit final : public PhasedStrategy {
public:
    SarMultiBandit(int m_problems, int k, long long n)
        : PhasedStrategy(m_problems * k, sar_schedule(n, m_problems * k)),
          m_problems_(m_problems),
          k_(k) {
        if (m_problems < 1) throw std::invalid_argument("need M >= 1 problems");
        if (k < 2) throw std::invalid_argument("need K >= 2 arms per problem");
        active_in_problem_.assign(m_problems_, k_);
        selected_.assign(m_problems_, 0);
        advance();
    }

    int num_arms() const override { return m_problems_ * k_; }

    SelectionResult finish() const override {
        SelectionResult result = base_result();
        result.selected = selected_;
        return result;
    }

    std::unique_ptr<Strategy> clone() const override {
        return std::make_unique<SarMultiBandit>(*this);
    }

private:
    int problem_of(int flat) const { return (flat - 1) / k_ + 1; }
    int arm_of(int flat) const { return (flat - 1) % k_ + 1; }

    bool output_ready() const override { return active_.size() == 1; }

    void conclude() override {
        const int flat = active_.front();
        const int problem = problem_of(flat);
        selected_[problem - 1] = arm_of(flat);
        events_.push_back({phase_ + 1, problem, arm_of(flat), EventKind::Accept});
        active_.clear();
        active_in_problem_[problem - 1] = 0;
    }

    void close_phase() override {
        // Empirical best active arm per active problem; active_ is ascending
        // so the lowest arm id wins mean ties.
        std::vector<int> best_flat(m_problems_, 0);
        std::vector<double> best_mean(m_problems_, 0.0);
        for (int flat : active_) {
            const int p = problem_of(flat) - 1;
            const double mean = stats_[flat - 1].mean();
            if (best_flat[p] == 0 || mean > best_mean[p]) {
                best_flat[p] = flat;
                best_mean[p] = mean;
            }
        }

        // A problem reduced to its last active arm accepts that arm and
        // retires; nothing is rejected in such a phase.
        for (int p = 0; p < m_problems_; ++p) {
            if (active_in_problem_[p] != 1) continue;
            const int flat = best_flat[p];
            selected_[p] = arm_of(flat);
            events_.push_back({phase_, p + 1, arm_of(flat), EventKind::Accept});
            remove_active(flat);
            active_in_problem_[p] = 0;
            return;
        }

        // Otherwise reject the pair furthest below its problem's empirical
        // best; ascending flat order makes ties lexicographic in
        // (problem, arm).
        int reject_flat = 0;
        double reject_gap = 0.0;
        for (int flat : active_) {
            const int p = problem_of(flat) - 1;
            const double gap = best_mean[p] - stats_[flat - 1].mean();
            if (reject_flat == 0 || gap > reject_gap) {
                reject_flat = flat;
                reject_gap = gap;
            }
        }
        const int problem = problem_of(reject_flat);
        events_.push_back({phase_, problem, arm_of(reject_flat), EventKind::Reject});
        remove_active(reject_flat);
        --active_in_problem_[problem - 1];
    }

    void remove_active(int flat) {
        active_.erase(std::find(active_.begin(), active_.end(), flat));
    }

    int m_problems_;
    int k_;
    std::vector<int> active_in_problem_;
    std::vector<int> selected_;
};

class SuccessiveRejectsMBest final : public PhasedStrategy {
public:
    SuccessiveRejectsMBest(int k, int m, long long n)
        : PhasedStrategy(k, sr_schedule(n, k, m)), k_(k), m_(m) {
        advance();
    }

    int num_arms() const override { return k_; }

    SelectionResult finish() const override {
        SelectionResult result = base_result();
        result.selected = survivors_;
        return result;
    }

    std::unique_ptr<Strategy> clone() const override {
        return std::make_unique<SuccessiveRejectsMBest>(*this);
    }

private:
    bool output_ready() const override {
        return phase_ == schedule_.phase_count();
    }

    void conclude() override {
        survivors_ = active_;  // ascending already
        active_.clear();
    }

    void close_phase() override {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < active_.size(); ++i) {
            if (active_mean(i) < active_mean(worst)) worst = i;
        }
        events_.push_back({phase_, 1, active_[worst], EventKind::Reject});
        active_.erase(active_.begin() + worst);
    }

    int k_;
    int m_;
    std::vector<int> survivors_;
};

class UniformAllocation final : public Strategy {
public:
    UniformAllocation(int k, int m, long long n) : k_(k), m_(m), n_(n) {
        if (k < 2) throw std::invalid_argument("need K >= 2 arms");
        if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");
        if (n < k) throw BudgetTooSmall("uniform allocation needs n >= K");
        stats_.resize(k);
        base_ = n / k;
        extra_ = static_cast<int>(n % k);
        remaining_ = target(1);
    }

    int num_arms() const override { return k_; }
    bool done() const override { return arm_ > k_; }

    int next_pull() const override {
        if (done()) throw std::logic_error("strategy is finished");
        return arm_;
    }

    void observe(double reward) override {
        if (done()) throw std::logic_error("strategy is finished");
        auto& stats = stats_[arm_ - 1];
        ++stats.count;
        stats.sum += reward;
        ++total_pulls_;
        if (--remaining_ == 0) {
            ++arm_;
            if (arm_ <= k_) remaining_ = target(arm_);
        }
    }

    SelectionResult finish() const override {
        if (!done()) throw std::logic_error("strategy is not finished");
        std::vector<double> means(k_);
        for (int i = 0; i < k_; ++i) means[i] = stats_[i].mean();
        std::vector<int> order;
        order_by_mean(means, order);

        SelectionResult result;
        result.selected.assign(order.begin(), order.begin() + m_);
        for (int& arm : result.selected) ++arm;  // positions -> 1-based ids
        std::sort(result.selected.begin(), result.selected.end());
        result.pulls.reserve(k_);
        for (const auto& stats : stats_) result.pulls.push_back(stats.count);
        result.total_pulls = total_pulls_;
        return result;
    }

    std::unique_ptr<Strategy> clone() const override {
        return std::make_unique<UniformAllocation>(*this);
    }

private:
    long long target(int arm) const { return base_ + (arm <= extra_ ? 1 : 0); }

    int k_;
    int m_;
    long long n_;
    std::vector<RunningStats> stats_;
    long long base_ = 0;
    int extra_ = 0;
    int arm_ = 1;
    long long remaining_ = 0;
    long long total_pulls_ = 0;
};

class GapE final : public Strategy {
public:
    GapE(int k, int m, long long n, double c, double h1)
        : k_(k), m_(m), n_(n), c_(c), h1_(h1) {
        if (k < 2) throw std::invalid_argument("need K >= 2 arms");
        if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");
        if (n < k) throw BudgetTooSmall("gap_e needs n >= K");
        if (!(c > 0.0)) throw std::invalid_argument("exploration parameter c must be positive");
        if (!(h1 > 0.0)) throw std::invalid_argument("H1 must be positive");
        stats_.resize(k);
    }

    int num_arms() const override { return k_; }
    bool done() const override { return round_ > n_; }

    int next_pull() const override {
        if (done()) throw std::logic_error("strategy is finished");
        if (pending_pull_ == 0) pending_pull_ = choose_arm();
        return pending_pull_;
    }

    void observe(double reward) override {
        const int arm = next_pull();
        auto& stats = stats_[arm - 1];
        ++stats.count;
        stats.sum += reward;
        pending_pull_ = 0;
        ++round_;
    }

    SelectionResult finish() const override {
        if (!done()) throw std::logic_error("strategy is not finished");
        std::vector<double> means(k_);
        for (int i = 0; i < k_; ++i) means[i] = stats_[i].mean();
        std::vector<int> order;
        order_by_mean(means, order);

        SelectionResult result;
        result.selected.assign(order.begin(), order.begin() + m_);
        for (int& arm : result.selected) ++arm;
        std::sort(result.selected.begin(), result.selected.end());
        result.pulls.reserve(k_);
        for (const auto& stats : stats_) result.pulls.push_back(stats.count);
        result.total_pulls = n_;
        return result;
    }

    std::unique_ptr<Strategy> clone() const override {
        return std::make_unique<GapE>(*this);
    }

private:
    int choose_arm() const {
        if (round_ <= k_) return static_cast<int>(round_);  // one pull per arm first
        means_.resize(k_);
        for (int i = 0; i < k_; ++i) means_[i] = stats_[i].mean();
        gaps_into(means_, m_, order_, gaps_);
        const double scale = static_cast<double>(n_) / h1_;
        int best = 0;
        double best_index = 0.0;
        for (int i = 0; i < k_; ++i) {
            const double index =
                -gaps_[i] + c_ * std::sqrt(scale / static_cast<double>(stats_[i].count));
            if (best == 0 || index > best_index) {
                best = i + 1;
                best_index = index;
            }
        }
        return best;
    }

    int k_;
    int m_;
    long long n_;
    double c_;
    double h1_;
    std::vector<RunningStats> stats_;
    long long round_ = 1;
    mutable int pending_pull_ = 0;
    mutable std::vector<double> means_;
    mutable std::vector<int> order_;
    mutable std::vector<double> gaps_;
};

}  // namespace

PhaseSchedule sar_schedule(long long n, int k) {
    return elimination_schedule(n, k, k - 1, overline_log(k));
}

PhaseSchedule sr_schedule(long long n, int k, int m) {
    if (k < 2) throw std::invalid_argument("need K >= 2 arms");
    if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");
    return elimination_schedule(n, k, k - m, overline_log_m(k, m));
}

std::vector<double> empirical_gaps(const std::vector<double>& means, int m_active) {
    const int count = static_cast<int>(means.size());
    if (count < 2) throw std::invalid_argument("need at least two active arms");
    if (m_active < 1 || m_active >= count) {
        throw std::invalid_argument("m_active must lie in 1..count-1");
    }
    std::vector<int> order;
    std::vector<double> gaps;
    gaps_into(means, m_active, order, gaps);
    return gaps;
}

std::unique_ptr<Strategy> make_sar_m_best(int k, int m, long long n) {
    return std::make_unique<SarMBest>(k, m, n);
}

std::unique_ptr<Strategy> make_sar_multibandit(int m_problems, int k, long long n) {
    return std::make_unique<SarMultiBandit>(m_problems, k, n);
}

std::unique_ptr<Strategy> make_successive_rejects(int k, int m, long long n) {
    return std::make_unique<SuccessiveRejectsMBest>(k, m, n);
}

std::unique_ptr<Strategy> make_uniform(int k, int m, long long n) {
    return std::make_unique<UniformAllocation>(k, m, n);
}

std::unique_ptr<Strategy> make_gap_e(int k, int m, long long n, double c,
                                     double h1_m_best) {
    return std::make_unique<GapE>(k, m, n, c, h1_m_best);
}

SelectionResult run_strategy(Strategy& strategy,
                             const std::vector<ArmDistribution>& flat_arms,
                             RngStream& rng) {
    if (static_cast<int>(flat_arms.size()) != strategy.num_arms()) {
        throw std::invalid_argument("arm count mismatch between strategy and instance");
    }
    while (!strategy.done()) {
        const int arm = strategy.next_pull();
        strategy.observe(sample(flat_arms[arm - 1], rng));
    }
    return strategy.finish();
}

SelectionResult run_sar_m_best(const BanditInstance& instance, int m, long long n,
                               RngStream& rng) {
    const auto strategy = make_sar_m_best(instance.num_arms(), m, n);
    return run_strategy(*strategy, instance.arms(), rng);
}

SelectionResult run_sar_multibandit(const MultiBanditInstance& multi, long long n,
                                    RngStream& rng) {
    const auto strategy =
        make_sar_multibandit(multi.num_problems(), multi.arms_per_problem(), n);
    const auto flat = multi.flat_arms();
    return run_strategy(*strategy, flat, rng);
}

SelectionResult run_sr_m_best(const BanditInstance& instance, int m, long long n,
                              RngStream& rng) {
    const auto strategy = make_successive_rejects(instance.num_arms(), m, n);
    return run_strategy(*strategy, instance.arms(), rng);
}

SelectionResult run_uniform(const BanditInstance& instance, int m, long long n,
                            RngStream& rng) {
    const auto strategy = make_uniform(instance.num_arms(), m, n);
    return run_strategy(*strategy, instance.arms(), rng);
}

SelectionResult run_gap_e(const BanditInstance& instance, int m, long long n,
                          double c, double h1_m_best, RngStream& rng) {
    const auto strategy = make_gap_e(instance.num_arms(), m, n, c, h1_m_best);
    return run_strategy(*strategy, instance.arms(), rng);
}

}  // namespace banditsim
