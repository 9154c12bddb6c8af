#pragma once

#include <optional>
#include <vector>

#include "banditsim/bandit.hpp"

namespace banditsim {

// Per-arm distance to the top-m selection boundary. When the m-th and
// (m+1)-th largest means tie, every arm sitting exactly on that value is
// interchangeable: swapping it across the boundary cannot change the
// selected mean multiset, so it carries no gap and is excluded from the
// hardness measures.
struct GapProfile {
    std::vector<std::optional<double>> gaps;  // nullopt = interchangeable
    int m = 0;
    double boundary_upper = 0.0;  // m-th largest mean
    double boundary_lower = 0.0;  // (m+1)-th largest mean

    int contributing() const;
};

// Hardness of a task. h1 sums inverse squared gaps; h2 maximizes rank times
// inverse squared gap over the ascending rearrangement of the contributing
// gaps. h2 <= h1 <= log(2*count)*h2 with count = sorted_gaps.size().
struct ComplexityReport {
    double h1 = 0.0;
    double h2 = 0.0;
    std::vector<double> sorted_gaps;  // ascending, contributing arms only
};

// Half-harmonic normalizer 1/2 + sum_{i=2..n} 1/i; requires n >= 2.
double overline_log(int n);

// 1 + sum_{i=m+2..k} 1/i, the analogous normalizer for the m-best variant
// of successive rejects; equals overline_log(k) at m = 1.
double overline_log_m(int k, int m);

GapProfile gaps_m_best(const std::vector<double>& means, int m);

// Throws InfeasibleComplexity when every arm is interchangeable (all means
// equal).
ComplexityReport complexity_m_best(const std::vector<double>& means, int m);

// Sums per-problem single-best h1 values and maximizes over the ascending
// rearrangement of all contributing gaps. Throws InfeasibleComplexity when
// some problem has all means equal.
ComplexityReport complexity_multibandit(const std::vector<std::vector<double>>& problem_means);
ComplexityReport complexity_multibandit(const MultiBanditInstance& multi);

// Misidentification probability bounds. Values above 1 (vacuous) are
// returned unclamped so callers can see how far from informative they are.
double bound_theorem1(long long n, int k, double h2_m_best);
double bound_theorem2(long long n, int m_problems, int k, double h2_multibandit);

}  // namespace banditsim
