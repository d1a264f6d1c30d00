#pragma once

#include <vector>

namespace csearch::secretary {

// Solution of the rank-based stopping recursion over m_total stores.
//
// y_values[m] = Y_m for m = 0..M (value after discarding the m-th store);
// u_values[i] = U_{i+1} for i = 0..M-1 (value when the (i+1)-th store is the
// best seen so far; U is defined for visit counts m >= 1 only).
struct Solution {
    int m_total = 0;
    std::vector<double> y_values;
    std::vector<double> u_values;
    int exact_cutoff = 0;       // smallest m >= 1 with m/M >= Y_m
    int approx_cutoff = 0;      // floor(M / e)
    double optimal_value = 0.0; // Y_0
};

// One row of the published cutoff/value table. m_over_e is kept at full
// precision here; the display rounding lives in io. skip_count is the
// printed column max(0, m_star_approx - 1); the y0 column is computed with
// the effective skip max(1, skip_count) for M >= 2 and is 1 for M = 1, which
// is the rule that reproduces the published figures.
struct TableRow {
    int m_total = 0;
    double m_over_e = 0.0;
    int m_star_approx = 0;
    int skip_count = 0;
    double y0 = 0.0;
};

// Backward recursion Y_m = (m/(m+1)) Y_{m+1} + (1/(m+1)) U_{m+1},
// U_m = max(m/M, Y_m), from Y_M = 0, U_M = 1.
Solution backward_induction(int m_total);

// Smallest m* with sum_{k=m*}^{M-1} 1/k <= 1. Requires m_total >= 2.
int exact_cutoff(int m_total);

// floor(M / e). Requires m_total >= 1.
int approx_cutoff(int m_total);

// Success probability of the rule "skip `skip_count` stores, then take the
// first store that beats everything seen so far, else the last store".
// skip_count >= 1 gives (s/M) sum_{k=s}^{M-1} 1/k; skip_count = 0 gives 1/M.
double policy_value(int m_total, int skip_count);

// Exhaustive check of policy_value by enumerating all m_total! rank orders.
// Bounded to m_total <= 10.
double oracle_success_probability(int m_total, int skip_count);

// Rows reproducing the published table for each requested store count.
std::vector<TableRow> table(const std::vector<int>& m_list);

// Continuous relaxation Y(m; M) = (m/M) ln(M/m) for 0 < m <= M.
double continuous_value(double m, double m_total);

} // namespace csearch::secretary
