#include "banditsim/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "banditsim/errors.hpp"

namespace banditsim {

int GapProfile::contributing() const {
    int count = 0;
    for (const auto& g : gaps) count += g.has_value();
    return count;
}

double overline_log(int n) {
    if (n < 2) throw std::invalid_argument("overline_log requires N >= 2");
    double sum = 0.5;
    for (int i = 2; i <= n; ++i) sum += 1.0 / i;
    return sum;
}

double overline_log_m(int k, int m) {
    if (k < 2) throw std::invalid_argument("overline_log_m requires K >= 2");
    if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");
    double sum = 1.0;
    for (int i = m + 2; i <= k; ++i) sum += 1.0 / i;
    return sum;
}

GapProfile gaps_m_best(const std::vector<double>& means, int m) {
    const int k = static_cast<int>(means.size());
    if (k < 2) throw std::invalid_argument("need at least two means");
    if (m < 1 || m > k - 1) throw std::invalid_argument("m must lie in 1..K-1");

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (means[a] != means[b]) return means[a] > means[b];
        return a < b;
    });

    GapProfile profile;
    profile.m = m;
    profile.boundary_upper = means[order[m - 1]];
    profile.boundary_lower = means[order[m]];
    profile.gaps.resize(k);

    if (profile.boundary_upper > profile.boundary_lower) {
        for (int r = 0; r < k; ++r) {
            const int i = order[r];
            profile.gaps[i] = r < m ? means[i] - profile.boundary_lower
                                    : profile.boundary_upper - means[i];
        }
    } else {
        // Boundary tie: arms on the tied value are interchangeable, the
        // rest measure their distance to it.
        const double boundary = profile.boundary_upper;
        for (int i = 0; i < k; ++i) {
            if (means[i] == boundary) continue;
            profile.gaps[i] = means[i] > boundary ? means[i] - boundary
                                                  : boundary - means[i];
        }
    }
    return profile;
}

namespace {

ComplexityReport report_from_gaps(std::vector<double> gaps) {
    if (gaps.empty()) {
        throw InfeasibleComplexity(
            "all arms are interchangeable; hardness is undefined");
    }
    ComplexityReport report;
    std::sort(gaps.begin(), gaps.end());
    for (double g : gaps) report.h1 += 1.0 / (g * g);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double candidate = static_cast<double>(i + 1) / (gaps[i] * gaps[i]);
        report.h2 = std::max(report.h2, candidate);
    }
    report.sorted_gaps = std::move(gaps);
    return report;
}

std::vector<double> contributing_gaps(const GapProfile& profile) {
    std::vector<double> gaps;
    gaps.reserve(profile.gaps.size());
    for (const auto& g : profile.gaps) {
        if (g) gaps.push_back(*g);
    }
    return gaps;
}

}  // namespace

ComplexityReport complexity_m_best(const std::vector<double>& means, int m) {
    return report_from_gaps(contributing_gaps(gaps_m_best(means, m)));
}

ComplexityReport complexity_multibandit(
    const std::vector<std::vector<double>>& problem_means) {
    if (problem_means.empty()) throw std::invalid_argument("need M >= 1 problems");
    double h1 = 0.0;
    std::vector<double> all_gaps;
    for (const auto& means : problem_means) {
        const ComplexityReport per = complexity_m_best(means, 1);
        h1 += per.h1;
        all_gaps.insert(all_gaps.end(), per.sorted_gaps.begin(), per.sorted_gaps.end());
    }
    ComplexityReport report = report_from_gaps(std::move(all_gaps));
    report.h1 = h1;
    return report;
}

ComplexityReport complexity_multibandit(const MultiBanditInstance& multi) {
    std::vector<std::vector<double>> problem_means;
    problem_means.reserve(multi.num_problems());
    for (const auto& p : multi.problems()) problem_means.push_back(p.true_means());
    return complexity_multibandit(problem_means);
}

double bound_theorem1(long long n, int k, double h2_m_best) {
    if (k < 2) throw std::invalid_argument("bound_theorem1 requires K >= 2");
    if (n < k + 1) throw std::invalid_argument("bound_theorem1 requires n >= K+1");
    if (!(h2_m_best > 0.0)) throw std::invalid_argument("H2 must be positive");
    const double kk = static_cast<double>(k);
    const double exponent =
        -static_cast<double>(n - k) / (8.0 * overline_log(k) * h2_m_best);
    return 2.0 * kk * kk * std::exp(exponent);
}

double bound_theorem2(long long n, int m_problems, int k, double h2_multibandit) {
    if (m_problems < 1) throw std::invalid_argument("bound_theorem2 requires M >= 1");
    if (k < 2) throw std::invalid_argument("bound_theorem2 requires K >= 2");
    const long long mk = static_cast<long long>(m_problems) * k;
    if (n < mk + 1) throw std::invalid_argument("bound_theorem2 requires n >= MK+1");
    if (!(h2_multibandit > 0.0)) throw std::invalid_argument("H2 must be positive");
    const double mm = static_cast<double>(m_problems);
    const double kk = static_cast<double>(k);
    const double exponent = -static_cast<double>(n - mk) /
                            (8.0 * overline_log(static_cast<int>(mk)) * h2_multibandit);
    return 2.0 * mm * mm * kk * kk * std::exp(exponent);
}

}  // namespace banditsim
