#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "banditsim/bandit.hpp"
#include "banditsim/rng.hpp"

using namespace banditsim;

namespace {

// All m-subsets of {1..k}, for brute-force checks.
std::vector<std::vector<int>> subsets(int k, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(m);
    auto rec = [&](auto&& self, int next, int depth) -> void {
        if (depth == m) {
            out.push_back(pick);
            return;
        }
        for (int a = next; a <= k; ++a) {
            pick[depth] = a;
            self(self, a + 1, depth + 1);
        }
    };
    rec(rec, 1, 0);
    return out;
}

}  // namespace

TEST_CASE("point mass sampling is degenerate") {
    RngStream rng(1, 0);
    const auto dist = ArmDistribution::point_mass(0.7);
    for (int i = 0; i < 100; ++i) CHECK(sample(dist, rng) == 0.7);
}

TEST_CASE("bernoulli edge probabilities are deterministic") {
    RngStream rng(2, 0);
    const auto zero = ArmDistribution::bernoulli(0.0);
    const auto one = ArmDistribution::bernoulli(1.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(sample(zero, rng) == 0.0);
        CHECK(sample(one, rng) == 1.0);
    }
}

TEST_CASE("bernoulli sample mean matches p and rewards stay in [0,1]") {
    RngStream rng(3, 0);
    const auto dist = ArmDistribution::bernoulli(0.3);
    double sum = 0.0;
    const long long draws = 1000000;
    for (long long i = 0; i < draws; ++i) {
        const double reward = sample(dist, rng);
        REQUIRE(reward >= 0.0);
        REQUIRE(reward <= 1.0);
        sum += reward;
    }
    // 3 sigma for a binomial proportion at p = 0.3
    CHECK(std::abs(sum / draws - 0.3) < 0.0014);
}

TEST_CASE("point mass consumes exactly one uniform draw") {
    RngStream a(77, 5);
    RngStream b(77, 5);
    const auto pm = ArmDistribution::point_mass(0.25);
    sample(pm, a);
    (void)b.next_uniform();
    for (int i = 0; i < 10; ++i) CHECK(a.next_uniform() == b.next_uniform());
}

TEST_CASE("reward streams replay bit for bit") {
    RngStream a(123456789, 42);
    RngStream b(123456789, 42);
    RngStream other_trial(123456789, 43);
    bool all_equal_to_other = true;
    for (int i = 0; i < 1000; ++i) {
        const double ua = a.next_uniform();
        CHECK(ua == b.next_uniform());
        all_equal_to_other = all_equal_to_other && (ua == other_trial.next_uniform());
    }
    CHECK_FALSE(all_equal_to_other);
}

TEST_CASE("invalid distribution parameters are rejected") {
    CHECK_THROWS_AS(ArmDistribution::bernoulli(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(ArmDistribution::bernoulli(1.1), std::invalid_argument);
    CHECK_THROWS_AS(ArmDistribution::point_mass(2.0), std::invalid_argument);
    CHECK_THROWS_AS(BanditInstance::bernoulli({0.5}), std::invalid_argument);
}

TEST_CASE("true means preserve arm order") {
    CHECK(BanditInstance::bernoulli({0.5, 0.4}).true_means() ==
          std::vector<double>{0.5, 0.4});

    std::vector<double> one_group{0.5};
    one_group.insert(one_group.end(), 19, 0.4);
    const auto means = BanditInstance::bernoulli(one_group).true_means();
    REQUIRE(means.size() == 20);
    CHECK(means[0] == 0.5);
    CHECK(std::count(means.begin(), means.end(), 0.4) == 19);

    const BanditInstance mixed({ArmDistribution::point_mass(0.9),
                                ArmDistribution::bernoulli(0.9)});
    CHECK(mixed.true_means() == std::vector<double>{0.9, 0.9});
}

TEST_CASE("selection correctness is tie tolerant") {
    const auto distinct = BanditInstance::bernoulli({0.5, 0.4, 0.3});
    CHECK(is_correct_selection(distinct, 1, {1}));
    CHECK_FALSE(is_correct_selection(distinct, 1, {2}));

    const auto tied = BanditInstance::bernoulli({0.5, 0.4, 0.4});
    CHECK(is_correct_selection(tied, 2, {1, 3}));
    CHECK(is_correct_selection(tied, 2, {1, 2}));
    CHECK_FALSE(is_correct_selection(tied, 2, {2, 3}));
}

TEST_CASE("selection preconditions") {
    const auto instance = BanditInstance::bernoulli({0.5, 0.4, 0.3});
    CHECK_THROWS_AS(is_correct_selection(instance, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(is_correct_selection(instance, 3, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(is_correct_selection(instance, 2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(is_correct_selection(instance, 2, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(is_correct_selection(instance, 2, {0, 1}), std::invalid_argument);
}

TEST_CASE("selection is a set predicate") {
    const auto instance = BanditInstance::bernoulli({0.3, 0.8, 0.5, 0.5});
    CHECK(is_correct_selection(instance, 2, {2, 3}));
    CHECK(is_correct_selection(instance, 2, {3, 2}));
    CHECK(is_correct_selection(instance, 2, {2, 4}));
    CHECK_FALSE(is_correct_selection(instance, 2, {1, 2}));
}

TEST_CASE("distinct means admit exactly one correct subset, ties at least one") {
    std::mt19937_64 gen(7);
    for (int round = 0; round < 50; ++round) {
        const int k = 2 + static_cast<int>(gen() % 5);
        std::vector<double> means;
        const bool with_ties = round % 2 == 0;
        for (int i = 0; i < k; ++i) {
            means.push_back(with_ties ? (1 + gen() % 3) * 0.25
                                      : static_cast<double>(gen() % 10000) / 10000.0 +
                                            i * 1e-5);
        }
        const auto instance = BanditInstance::bernoulli(means);
        std::vector<double> unique(means);
        std::sort(unique.begin(), unique.end());
        const bool distinct =
            std::adjacent_find(unique.begin(), unique.end()) == unique.end();
        for (int m = 1; m <= k - 1; ++m) {
            int correct = 0;
            for (const auto& subset : subsets(k, m)) {
                correct += is_correct_selection(instance, m, subset);
            }
            CHECK(correct >= 1);
            if (distinct) CHECK(correct == 1);
        }
    }
}

TEST_CASE("multibandit correctness checks every problem") {
    const MultiBanditInstance multi({BanditInstance::bernoulli({0.9, 0.1}),
                                     BanditInstance::bernoulli({0.6, 0.4})});
    CHECK(is_correct_multibandit(multi, {1, 1}));
    CHECK_FALSE(is_correct_multibandit(multi, {1, 2}));
    CHECK_THROWS_AS(is_correct_multibandit(multi, {1}), std::invalid_argument);

    const MultiBanditInstance tied({BanditInstance::bernoulli({0.5, 0.5}),
                                    BanditInstance::bernoulli({0.6, 0.4})});
    CHECK(is_correct_multibandit(tied, {2, 1}));
    CHECK_FALSE(is_correct_multibandit(tied, {2, 2}));
}

TEST_CASE("multibandit instances require one shared K") {
    CHECK_THROWS_AS(MultiBanditInstance({BanditInstance::bernoulli({0.9, 0.1}),
                                         BanditInstance::bernoulli({0.6, 0.4, 0.2})}),
                    std::invalid_argument);
    const MultiBanditInstance multi({BanditInstance::bernoulli({0.9, 0.1}),
                                     BanditInstance::bernoulli({0.6, 0.4})});
    const auto flat = multi.flat_arms();
    REQUIRE(flat.size() == 4);
    CHECK(flat[2].mean() == 0.6);  // (problem 2, arm 1) sits at flat id 3
}
