#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csearch/market.hpp"
#include "csearch/store_values.hpp"

namespace csearch::sim {

enum class PolicyKind {
    Secretary,         // skip, then stop at the first viable value
    Reservation,       // stop at the first reward >= threshold
    NoExploration,     // never search
    RandomExploration, // search a uniform number of stores
    EpsilonGreedy      // search one store with probability epsilon
};

const char* policy_name(PolicyKind kind);

// How per-store rewards are produced. ContinuousTest swaps the two-point
// rewards for i.i.d. U(0,1) draws per store-period and reduces the store
// value to the running-best reward minus accumulated cost. It exists only to
// validate the stopping machinery against the rank model (which assumes no
// ties) and is not part of the economic model; in this mode the no-stop
// fallback takes the last sampled store, as the rank model prescribes.
enum class RewardModel { TwoPoint, ContinuousTest };

struct PolicySpec {
    PolicyKind kind = PolicyKind::NoExploration;
    std::optional<int> skip_count;     // Secretary; unset -> horizon rule
    double reservation_reward = 0.0;   // Reservation threshold
    double epsilon = 0.0;              // EpsilonGreedy search probability
    std::optional<int> explore_cap;    // max searches per period, <= M-1

    void validate(const market::MarketParams& params) const;
    int effective_cap(int m_total) const;
    // Secretary skip applied to a searchable horizon of cap+1 observations:
    // explicit skip_count when set, else max(1, floor((cap+1)/e) - 1).
    int effective_skip(int cap) const;
};

// Hidden state of every store at one period.
struct StoreStateVector {
    std::vector<market::StoreState> states;
    long period = 0;
};

struct PeriodRecord {
    int searches = 0;                  // n(t), paid observations this period
    int chosen_store = 0;              // j(t)
    market::StoreState chosen_state = market::StoreState::High;
    double reward = 0.0;               // realized surplus at the chosen store
    double net_surplus = 0.0;          // reward - cost * searches
    double best_reward = 0.0;          // clairvoyant max over all stores
    int low_count = 0;                 // stores in state Low this period
};

struct EpisodeTrace {
    market::MarketParams params;
    PolicySpec policy;
    RewardModel reward_model = RewardModel::TwoPoint;
    std::uint64_t seed = 0;
    int skip_used = 0;       // Secretary skip actually applied, else 0
    int explore_cap_used = 0;
    int initial_position = 0;
    std::vector<PeriodRecord> periods;
};

struct SimOptions {
    RewardModel reward_model = RewardModel::TwoPoint;
    // Required for frozen chains (beta_low = beta_high = 1), where the
    // stationary distribution cannot seed the market.
    std::optional<std::vector<market::StoreState>> initial_states;
};

struct RegretReport {
    long horizon = 0;
    double cumulative_regret = 0.0;      // T mu* - sum of realized rewards
    double clairvoyant_regret = 0.0;     // sum of (best reward - net surplus)
    double discounted_net_surplus = 0.0; // sum of delta^t net surplus
};

struct FieldStats {
    double mean = 0.0;
    double variance = 0.0; // unbiased sample variance, 0 when R < 2
    double ci95_lo = 0.0;  // normal-approximation 95% interval for the mean
    double ci95_hi = 0.0;
};

struct MonteCarloSummary {
    long replications = 0;
    long horizon = 0;
    std::uint64_t master_seed = 0;
    int skip_used = 0;
    int explore_cap_used = 0;
    FieldStats cumulative_regret;
    FieldStats clairvoyant_regret;
    FieldStats discounted_net_surplus;
};

// One seeded episode of T periods. Each period: observe the home store free,
// draw a fresh exploration order over the other M-1 stores, walk the policy
// over the induced value sequence at cost c per step, purchase at the
// policy's pick (free return within the period), then transition every store.
EpisodeTrace run_episode(const market::MarketParams& params, const PolicySpec& policy,
                         long periods, std::uint64_t seed, const SimOptions& options = {});

// Regret accounting recomputed purely from the trace. mu* is the best arm's
// steady-state mean reward; for frozen markets (no unique stationary point)
// it is the best frozen reward, i.e. the first period's clairvoyant maximum.
RegretReport regret_report(const EpisodeTrace& trace, const market::MarketParams& params);

// R independent episodes with replication seeds master_seed + r. Two policies
// run with the same master seed face identical market sample paths, which
// makes paired comparisons exact.
std::vector<RegretReport> episode_reports(const market::MarketParams& params,
                                          const PolicySpec& policy, long periods,
                                          long replications, std::uint64_t master_seed,
                                          const SimOptions& options = {});

MonteCarloSummary monte_carlo(const market::MarketParams& params, const PolicySpec& policy,
                              long periods, long replications, std::uint64_t master_seed,
                              const SimOptions& options = {});

} // namespace csearch::sim
