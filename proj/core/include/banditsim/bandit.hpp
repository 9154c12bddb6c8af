#pragma once

#include <vector>

#include "banditsim/rng.hpp"

namespace banditsim {

// A reward distribution supported on [0, 1] with a known analytic mean.
class ArmDistribution {
public:
    enum class Kind { Bernoulli, PointMass };

    static ArmDistribution bernoulli(double p);
    static ArmDistribution point_mass(double v);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    double mean() const { return param_; }

private:
    ArmDistribution(Kind kind, double param);

    Kind kind_;
    double param_;
};

// Draw one reward. A point mass still consumes one uniform draw so that
// pull sequences stay aligned across distribution kinds.
double sample(const ArmDistribution& dist, RngStream& rng);

// K >= 2 arms with known true means. Arms are 1-indexed in every interface.
class BanditInstance {
public:
    explicit BanditInstance(std::vector<ArmDistribution> arms);

    static BanditInstance bernoulli(const std::vector<double>& means);
    static BanditInstance point_mass(const std::vector<double>& values);

    int num_arms() const { return static_cast<int>(arms_.size()); }
    const ArmDistribution& arm(int index) const { return arms_[index - 1]; }
    const std::vector<ArmDistribution>& arms() const { return arms_; }
    std::vector<double> true_means() const;

private:
    std::vector<ArmDistribution> arms_;
};

// M >= 1 problems sharing one number of arms K >= 2. The pair (problem p,
// arm i) is flattened to arm id (p-1)*K + i, 1-indexed like everything else.
class MultiBanditInstance {
public:
    explicit MultiBanditInstance(std::vector<BanditInstance> problems);

    int num_problems() const { return static_cast<int>(problems_.size()); }
    int arms_per_problem() const { return problems_.front().num_arms(); }
    const BanditInstance& problem(int index) const { return problems_[index - 1]; }
    const std::vector<BanditInstance>& problems() const { return problems_; }
    std::vector<ArmDistribution> flat_arms() const;

private:
    std::vector<BanditInstance> problems_;
};

// Tie-tolerant success criterion: true iff the multiset of selected means
// equals the multiset of the m largest means, i.e. the selection attains the
// maximal total mean over all m-subsets.
bool is_correct_selection(const BanditInstance& instance, int m,
                          const std::vector<int>& selected);

// True iff for every problem p the selected arm attains that problem's
// maximal mean (ties tolerated within each problem). selected[p-1] is the
// arm chosen for problem p.
bool is_correct_multibandit(const MultiBanditInstance& multi,
                            const std::vector<int>& selected);

}  // namespace banditsim
