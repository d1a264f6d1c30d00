#include "csearch/secretary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace csearch::secretary {

namespace {

constexpr long double kE = std::numbers::e_v<long double>;

void check_store_count(int m_total) {
    if (m_total < 1) throw std::invalid_argument("store count must be >= 1");
}

void check_skip(int m_total, int skip_count) {
    if (skip_count < 0 || skip_count >= m_total)
        throw std::invalid_argument("skip count must lie in [0, store count)");
}

} // namespace

Solution backward_induction(int m_total) {
    check_store_count(m_total);
    const int m = m_total;

    // Long double throughout: the recursion is a chain of convex
    // combinations, so this keeps the stored values well inside 1e-12 of
    // exact even at M = 1e6.
    std::vector<long double> y(static_cast<std::size_t>(m) + 1);
    std::vector<long double> u(static_cast<std::size_t>(m) + 1); // u[0] unused
    y[m] = 0.0L;
    u[m] = 1.0L;

    int cutoff = m; // descending loop ends at the smallest m with m/M >= Y_m
    for (int i = m - 1; i >= 0; --i) {
        y[i] = (static_cast<long double>(i) * y[i + 1] + u[i + 1]) / (i + 1);
        if (i >= 1) {
            const long double take = static_cast<long double>(i) / m;
            u[i] = std::max(take, y[i]);
            if (take >= y[i]) cutoff = i;
        }
    }

    Solution out;
    out.m_total = m;
    out.y_values.resize(static_cast<std::size_t>(m) + 1);
    out.u_values.resize(static_cast<std::size_t>(m));
    for (int i = 0; i <= m; ++i) out.y_values[i] = static_cast<double>(y[i]);
    for (int i = 1; i <= m; ++i) out.u_values[i - 1] = static_cast<double>(u[i]);
    out.exact_cutoff = cutoff;
    out.approx_cutoff = approx_cutoff(m);
    out.optimal_value = static_cast<double>(y[0]);
    return out;
}

int exact_cutoff(int m_total) {
    if (m_total < 2)
        throw std::invalid_argument("exact cutoff needs at least 2 stores");
    // Accumulate 1/k from the small terms up; first k whose suffix sum
    // exceeds 1 puts the cutoff at k + 1.
    long double sum = 0.0L;
    for (int k = m_total - 1; k >= 1; --k) {
        sum += 1.0L / k;
        if (sum > 1.0L) return k + 1;
    }
    return 1;
}

int approx_cutoff(int m_total) {
    check_store_count(m_total);
    return static_cast<int>(std::floor(static_cast<long double>(m_total) / kE));
}

double policy_value(int m_total, int skip_count) {
    check_store_count(m_total);
    check_skip(m_total, skip_count);
    // Skipping nothing means taking the first store, best with chance 1/M.
    if (skip_count == 0) return 1.0 / m_total;
    long double sum = 0.0L;
    for (int k = m_total - 1; k >= skip_count; --k) sum += 1.0L / k;
    return static_cast<double>(sum * skip_count / m_total);
}

double oracle_success_probability(int m_total, int skip_count) {
    check_store_count(m_total);
    if (m_total > 10)
        throw std::length_error("enumeration oracle is bounded to 10 stores");
    check_skip(m_total, skip_count);

    std::vector<int> ranks(static_cast<std::size_t>(m_total));
    std::iota(ranks.begin(), ranks.end(), 0); // m_total - 1 marks the best

    std::uint64_t total = 0;
    std::uint64_t hits = 0;
    do {
        ++total;
        int chosen = m_total - 1; // fall back to the final store
        int best_seen = -1;
        for (int pos = 0; pos < m_total; ++pos) {
            const bool record = ranks[pos] > best_seen;
            if (record) best_seen = ranks[pos];
            if (pos + 1 > skip_count && record) {
                chosen = pos;
                break;
            }
        }
        if (ranks[chosen] == m_total - 1) ++hits;
    } while (std::next_permutation(ranks.begin(), ranks.end()));

    return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<TableRow> table(const std::vector<int>& m_list) {
    std::vector<TableRow> rows;
    rows.reserve(m_list.size());
    for (int m : m_list) {
        check_store_count(m);
        TableRow row;
        row.m_total = m;
        row.m_over_e = static_cast<double>(static_cast<long double>(m) / kE);
        row.m_star_approx = approx_cutoff(m);
        row.skip_count = std::max(0, row.m_star_approx - 1);
        row.y0 = (m == 1) ? 1.0 : policy_value(m, std::max(1, row.skip_count));
        rows.push_back(row);
    }
    return rows;
}

double continuous_value(double m, double m_total) {
    if (!(m_total > 0.0))
        throw std::invalid_argument("store count must be positive");
    if (!(m > 0.0) || m > m_total)
        throw std::invalid_argument("m must lie in (0, m_total]");
    return (m / m_total) * std::log(m_total / m);
}

} // namespace csearch::secretary
