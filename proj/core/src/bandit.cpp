#include "banditsim/bandit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace banditsim {

ArmDistribution::ArmDistribution(Kind kind, double param)
    : kind_(kind), param_(param) {
    if (!(param >= 0.0 && param <= 1.0)) {
        throw std::invalid_argument("arm parameter must lie in [0,1]");
    }
}

ArmDistribution ArmDistribution::bernoulli(double p) {
    return ArmDistribution(Kind::Bernoulli, p);
}

ArmDistribution ArmDistribution::point_mass(double v) {
    return ArmDistribution(Kind::PointMass, v);
}

double sample(const ArmDistribution& dist, RngStream& rng) {
    const double u = rng.next_uniform();
    if (dist.kind() == ArmDistribution::Kind::Bernoulli) {
        return u < dist.parameter() ? 1.0 : 0.0;
    }
    return dist.parameter();
}

BanditInstance::BanditInstance(std::vector<ArmDistribution> arms)
    : arms_(std::move(arms)) {
    if (arms_.size() < 2) {
        throw std::invalid_argument("a bandit instance needs K >= 2 arms");
    }
}

BanditInstance BanditInstance::bernoulli(const std::vector<double>& means) {
    std::vector<ArmDistribution> arms;
    arms.reserve(means.size());
    for (double p : means) arms.push_back(ArmDistribution::bernoulli(p));
    return BanditInstance(std::move(arms));
}

BanditInstance BanditInstance::point_mass(const std::vector<double>& values) {
    std::vector<ArmDistribution> arms;
    arms.reserve(values.size());
    for (double v : values) arms.push_back(ArmDistribution::point_mass(v));
    return BanditInstance(std::move(arms));
}

std::vector<double> BanditInstance::true_means() const {
    std::vector<double> means;
    means.reserve(arms_.size());
    for (const auto& arm : arms_) means.push_back(arm.mean());
    return means;
}

MultiBanditInstance::MultiBanditInstance(std::vector<BanditInstance> problems)
    : problems_(std::move(problems)) {
    if (problems_.empty()) {
        throw std::invalid_argument("a multi-bandit instance needs M >= 1 problems");
    }
    const int k = problems_.front().num_arms();
    for (const auto& p : problems_) {
        if (p.num_arms() != k) {
            throw std::invalid_argument("all problems must share one number of arms");
        }
    }
}

std::vector<ArmDistribution> MultiBanditInstance::flat_arms() const {
    std::vector<ArmDistribution> flat;
    flat.reserve(problems_.size() * problems_.front().num_arms());
    for (const auto& p : problems_) {
        flat.insert(flat.end(), p.arms().begin(), p.arms().end());
    }
    return flat;
}

bool is_correct_selection(const BanditInstance& instance, int m,
                          const std::vector<int>& selected) {
    const int k = instance.num_arms();
    if (m < 1 || m > k - 1) {
        throw std::invalid_argument("m must lie in 1..K-1");
    }
    if (static_cast<int>(selected.size()) != m) {
        throw std::invalid_argument("selection must contain exactly m arms");
    }
    std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
    for (int j : selected) {
        if (j < 1 || j > k) throw std::invalid_argument("arm index out of range");
        if (seen[j]) throw std::invalid_argument("selection contains a duplicate arm");
        seen[j] = 1;
    }

    std::vector<double> means = instance.true_means();
    std::vector<double> chosen;
    chosen.reserve(selected.size());
    for (int j : selected) chosen.push_back(means[j - 1]);
    std::sort(chosen.begin(), chosen.end(), std::greater<>());
    std::sort(means.begin(), means.end(), std::greater<>());
    means.resize(m);
    return chosen == means;
}

bool is_correct_multibandit(const MultiBanditInstance& multi,
                            const std::vector<int>& selected) {
    if (static_cast<int>(selected.size()) != multi.num_problems()) {
        throw std::invalid_argument("selection must contain one arm per problem");
    }
    for (int p = 1; p <= multi.num_problems(); ++p) {
        const auto& problem = multi.problem(p);
        const int j = selected[p - 1];
        if (j < 1 || j > problem.num_arms()) {
            throw std::invalid_argument("arm index out of range");
        }
        const std::vector<double> means = problem.true_means();
        const double best = *std::max_element(means.begin(), means.end());
        if (means[j - 1] != best) return false;
    }
    return true;
}

}  // namespace banditsim
