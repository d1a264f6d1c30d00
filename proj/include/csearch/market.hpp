#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "csearch/rng.hpp"

namespace csearch::market {

// Cost state of a store. Low-cost stores charge the low price and hand the
// consumer the larger surplus.
enum class StoreState : std::uint8_t { Low = 0, High = 1 };

inline int state_index(StoreState s) { return static_cast<int>(s); }

// All model constants in one place. Surpluses are in arbitrary units; every
// downstream computation consumes s_low/s_high directly, so any demand model
// can be injected by picking the pair.
struct MarketParams {
    int m_total = 1;        // number of stores, >= 1
    double beta_low = 0.5;  // P(stay Low), in [0, 1]
    double beta_high = 0.5; // P(stay High), in [0, 1]
    double delta = 0.0;     // discount factor, in [0, 1)
    double cost = 0.0;      // per-search cost, >= 0
    double s_low = 1.0;     // surplus at a low-price store
    double s_high = 0.0;    // surplus at a high-price store, <= s_low

    void validate() const; // throws std::invalid_argument
    bool symmetric() const { return beta_low == beta_high; }
    bool frozen() const { return beta_low == 1.0 && beta_high == 1.0; }
};

// Row-stochastic 2x2 matrix over (Low, High).
struct TransitionMatrix {
    std::array<std::array<double, 2>, 2> p{};

    double at(StoreState from, StoreState to) const {
        return p[state_index(from)][state_index(to)];
    }
    void validate() const; // rows sum to 1 +- 1e-12, entries in [0, 1]
};

struct Distribution {
    double low = 0.0;
    double high = 0.0;
};

// Steady-state consumer values when the high-price surplus sits exactly at
// the search-indifference point.
struct EquilibriumReport {
    double s_reservation = 0.0;
    double v_low = 0.0;  // value of currently holding the low price
    double v_high = 0.0; // value of currently holding the reservation price
};

// Surplus handed out by a store in the given state.
double reward(StoreState state, const MarketParams& params);

// Consumer surplus under linear demand D(p) = max(0, a - b p):
// (a - b p)^2 / (2b) for p <= a/b, else 0.
double surplus_linear_demand(double intercept, double slope, double price);

TransitionMatrix transition_matrix(const MarketParams& params);

// Stationary distribution (pi_L, pi_H). Errors when beta_low = beta_high = 1
// (the stationary point is not unique).
Distribution steady_state(const TransitionMatrix& matrix);

// s_low + (4 beta delta - 2 delta - 2) c. Defined only for the symmetric
// chain beta_low == beta_high.
double reservation_surplus(const MarketParams& params);

// Solves V_H = s_r + delta [beta V_H + (1-beta) V_L],
//        V_L = s_low + delta [beta V_L + (1-beta) V_H]
// and checks the indifference condition V_H = -c + (V_H + V_L)/2. An
// inconsistent s_reservation raises InconsistencyError with the residual.
EquilibriumReport solve_fishman_system(const MarketParams& params,
                                       double s_reservation);

// One synchronous step of the chain for every store; visited and unvisited
// stores are treated identically. One stream draw per store.
std::vector<StoreState> transition_step(const std::vector<StoreState>& states,
                                        const TransitionMatrix& matrix,
                                        rng::Stream& stream);

} // namespace csearch::market
