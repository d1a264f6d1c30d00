#include "csearch/store_values.hpp"

#include <stdexcept>

namespace csearch::storeval {

ContinuationValues solve_continuation(const market::MarketParams& params) {
    params.validate(); // delta < 1 guarantees the fixed point exists

    const long double beta_low = params.beta_low;
    const long double beta_high = params.beta_high;
    const long double delta = params.delta;
    // Closed-form inverse of (I - delta P) applied to (s_low, s_high).
    const long double det = (1.0L - delta * beta_low) * (1.0L - delta * beta_high) -
                            delta * delta * (1.0L - beta_low) * (1.0L - beta_high);
    const long double v_low =
        ((1.0L - delta * beta_high) * params.s_low + delta * (1.0L - beta_low) * params.s_high) / det;
    const long double v_high =
        (delta * (1.0L - beta_high) * params.s_low + (1.0L - delta * beta_low) * params.s_high) / det;

    return {static_cast<double>(v_low), static_cast<double>(v_high)};
}

ValueTracker::ValueTracker(const market::MarketParams& params,
                           const ContinuationValues& continuation)
    : params_(params), matrix_(market::transition_matrix(params)), continuation_(continuation) {}

double ValueTracker::continuation_term(market::StoreState state) const {
    return params_.delta * (matrix_.at(state, market::StoreState::Low) * continuation_.v0_low +
                            matrix_.at(state, market::StoreState::High) * continuation_.v0_high);
}

double ValueTracker::push(market::StoreState state) {
    const double r = market::reward(state, params_);
    // Strict improvement moves the running best; ties keep the earliest store.
    if (count_ == 0 || r > best_reward_) {
        best_reward_ = r;
        best_state_ = state;
    }
    const int j = count_;
    ++count_;
    current_ = best_reward_ - static_cast<double>(j) * params_.cost + continuation_term(best_state_);
    return current_;
}

ValueSequence value_sequence(const std::vector<market::StoreState>& observed,
                             const market::MarketParams& params,
                             const ContinuationValues& continuation) {
    if (observed.empty()) throw std::invalid_argument("observed sequence must be non-empty");
    params.validate();
    if (static_cast<int>(observed.size()) > params.m_total)
        throw std::invalid_argument("observed sequence longer than the market");

    ValueSequence seq;
    seq.observed_states = observed;
    seq.values.reserve(observed.size());

    ValueTracker tracker(params, continuation);
    double best = 0.0;
    for (std::size_t j = 0; j < observed.size(); ++j) {
        const double v = tracker.push(observed[j]);
        seq.values.push_back(v);
        if (j == 0 || v > best) {
            best = v;
            seq.best_index = static_cast<int>(j);
        }
    }
    return seq;
}

std::vector<bool> viable_flags(const ValueSequence& seq) {
    std::vector<bool> flags(seq.values.size(), false);
    double best = 0.0;
    for (std::size_t j = 0; j < seq.values.size(); ++j) {
        if (j == 0 || seq.values[j] > best) {
            flags[j] = true;
            best = seq.values[j];
        }
    }
    return flags;
}

} // namespace csearch::storeval
