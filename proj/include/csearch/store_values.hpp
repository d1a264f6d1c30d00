#pragma once

#include <vector>

#include "csearch/market.hpp"

namespace csearch::storeval {

// Fixed point of V = s + delta P V: the expected discounted value of sitting
// at a store in each state with no further searches.
struct ContinuationValues {
    double v0_low = 0.0;
    double v0_high = 0.0;
};

// Per-period values V_0..V_{len-1} of an exploration sequence. values[j] is
// the running-best reward minus j searches' cost plus the discounted
// continuation at the running-best store.
struct ValueSequence {
    std::vector<double> values;
    int best_index = 0; // argmax of values, earliest on ties
    std::vector<market::StoreState> observed_states;
};

ContinuationValues solve_continuation(const market::MarketParams& params);

// Incremental builder of the V_j sequence; one push per store observed.
// Shared by value_sequence and the simulator so both walk the same formula.
class ValueTracker {
public:
    ValueTracker(const market::MarketParams& params,
                 const ContinuationValues& continuation);

    // Observe the next store; returns V_j for j = number of prior pushes.
    double push(market::StoreState state);

    int count() const { return count_; }
    double current() const { return current_; }
    double best_reward() const { return best_reward_; }
    market::StoreState best_state() const { return best_state_; }

    // delta * expected continuation starting from a store in `state`.
    double continuation_term(market::StoreState state) const;

private:
    const market::MarketParams& params_;
    market::TransitionMatrix matrix_;
    ContinuationValues continuation_;
    int count_ = 0;
    double current_ = 0.0;
    double best_reward_ = 0.0;
    market::StoreState best_state_ = market::StoreState::High;
};

ValueSequence value_sequence(const std::vector<market::StoreState>& observed,
                             const market::MarketParams& params,
                             const ContinuationValues& continuation);

// flag[j] = true iff values[j] strictly exceeds every earlier value;
// flag[0] = true. Ties are not viable.
std::vector<bool> viable_flags(const ValueSequence& seq);

} // namespace csearch::storeval
