#include "csearch/policy_sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "csearch/rng.hpp"

namespace csearch::sim {

namespace {

constexpr long kMaxPeriods = 10'000'000;
constexpr long kMaxReplications = 10'000'000;
constexpr long kMaxEpisodeWork = 1'000'000'000; // periods * replications bound

using market::StoreState;

// Per-period observation walk shared by every policy. Tracks the running-best
// reward (earliest store on ties, the free-return target) and the store value
// sequence records.
class PeriodWalk {
public:
    PeriodWalk(const std::vector<double>& rewards, const std::vector<StoreState>& states,
               const std::vector<int>& order, int home,
               const market::MarketParams& params, RewardModel model,
               const storeval::ContinuationValues& continuation)
        : rewards_(rewards), states_(states), order_(order),
          params_(params), model_(model),
          tracker_(params, continuation) {
        best_store_ = home;
        best_reward_ = rewards_[home];
        if (model_ == RewardModel::TwoPoint) {
            value_ = tracker_.push(states_[home]);
        } else {
            value_ = best_reward_;
        }
        value_max_ = value_;
        last_observed_ = home;
    }

    int searches() const { return searches_; }
    int observations() const { return searches_ + 1; }
    double value() const { return value_; }
    double value_max() const { return value_max_; }
    double best_reward() const { return best_reward_; }
    int best_store() const { return best_store_; }
    int last_observed() const { return last_observed_; }
    bool exhausted(int cap) const { return searches_ >= cap; }

    // Largest value the next observation could possibly take. Exploration is
    // pointless once this cannot strictly beat the running value record.
    double next_value_bound() const {
        if (model_ == RewardModel::ContinuousTest) {
            return 1.0 - static_cast<double>(searches_ + 1) * params_.cost;
        }
        if (best_reward_ < params_.s_low) {
            return params_.s_low - static_cast<double>(searches_ + 1) * params_.cost +
                   tracker_.continuation_term(StoreState::Low);
        }
        return value_ - params_.cost; // running best cannot improve
    }

    // Pay c, observe the next store in the order; returns true if its value
    // sets a strict record (the viability flag).
    bool observe_next() {
        const int store = order_[searches_];
        ++searches_;
        last_observed_ = store;
        const double r = rewards_[store];
        if (r > best_reward_) {
            best_reward_ = r;
            best_store_ = store;
        }
        if (model_ == RewardModel::TwoPoint) {
            value_ = tracker_.push(states_[store]);
        } else {
            value_ = best_reward_ - static_cast<double>(searches_) * params_.cost;
        }
        const bool viable = value_ > value_max_;
        if (viable) value_max_ = value_;
        return viable;
    }

private:
    const std::vector<double>& rewards_;
    const std::vector<StoreState>& states_;
    const std::vector<int>& order_;
    const market::MarketParams& params_;
    RewardModel model_;
    storeval::ValueTracker tracker_;
    int searches_ = 0;
    int best_store_ = 0;
    int last_observed_ = 0;
    double best_reward_ = 0.0;
    double value_ = 0.0;
    double value_max_ = 0.0;
};

struct WalkResult {
    int searches = 0;
    int chosen = 0;
};

WalkResult walk_secretary(PeriodWalk& walk, int cap, int skip, RewardModel model) {
    std::optional<int> stopped;
    while (!walk.exhausted(cap)) {
        if (!(walk.next_value_bound() > walk.value_max())) break; // no viable future
        const bool viable = walk.observe_next();
        if (viable && walk.observations() > skip) {
            stopped = walk.last_observed();
            break;
        }
    }
    WalkResult out;
    out.searches = walk.searches();
    if (stopped) {
        out.chosen = *stopped;
    } else if (model == RewardModel::ContinuousTest) {
        out.chosen = walk.last_observed(); // rank-model fallback
    } else {
        out.chosen = walk.best_store(); // free return within the period
    }
    return out;
}

WalkResult walk_reservation(PeriodWalk& walk, int cap, double threshold,
                            const std::vector<double>& rewards) {
    std::optional<int> stopped;
    if (rewards[walk.best_store()] >= threshold) {
        stopped = walk.best_store(); // home store already clears the bar
    } else {
        while (!walk.exhausted(cap)) {
            walk.observe_next();
            if (rewards[walk.last_observed()] >= threshold) {
                stopped = walk.last_observed();
                break;
            }
        }
    }
    return {walk.searches(), stopped ? *stopped : walk.best_store()};
}

WalkResult walk_fixed_count(PeriodWalk& walk, int count) {
    for (int i = 0; i < count; ++i) walk.observe_next();
    return {walk.searches(), walk.best_store()};
}

} // namespace

const char* policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Secretary: return "secretary";
        case PolicyKind::Reservation: return "reservation";
        case PolicyKind::NoExploration: return "none";
        case PolicyKind::RandomExploration: return "random";
        case PolicyKind::EpsilonGreedy: return "egreedy";
    }
    return "unknown";
}

void PolicySpec::validate(const market::MarketParams& params) const {
    params.validate();
    if (skip_count && *skip_count < 0)
        throw std::invalid_argument("skip_count must be >= 0");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (explore_cap && (*explore_cap < 0 || *explore_cap > params.m_total - 1))
        throw std::invalid_argument("explore_cap must lie in [0, m_total - 1]");
    if (kind == PolicyKind::Reservation && !std::isfinite(reservation_reward))
        throw std::invalid_argument("reservation_reward must be finite");
}

int PolicySpec::effective_cap(int m_total) const {
    return explore_cap ? *explore_cap : m_total - 1;
}

int PolicySpec::effective_skip(int cap) const {
    if (skip_count) return *skip_count;
    const double horizon = static_cast<double>(cap) + 1.0;
    const int cutoff = static_cast<int>(std::floor(horizon / std::numbers::e));
    return std::max(1, cutoff - 1);
}

EpisodeTrace run_episode(const market::MarketParams& params, const PolicySpec& policy,
                         long periods, std::uint64_t seed, const SimOptions& options) {
    params.validate();
    policy.validate(params);
    if (periods < 1) throw std::invalid_argument("periods must be >= 1");
    if (periods > kMaxPeriods) throw std::length_error("periods exceed the resource bound");
    const int m_total = params.m_total;

    if (options.initial_states &&
        static_cast<int>(options.initial_states->size()) != m_total)
        throw std::invalid_argument("initial_states must cover every store");
    if (!options.initial_states && params.frozen())
        throw std::invalid_argument("frozen chain needs explicit initial states");

    const bool continuous = options.reward_model == RewardModel::ContinuousTest;
    const auto matrix = market::transition_matrix(params);

    auto market_stream = rng::derive_stream(seed, rng::kMarketTag);
    auto policy_stream = rng::derive_stream(seed, rng::kPolicyTag);

    std::vector<StoreState> states;
    if (options.initial_states) {
        states = *options.initial_states;
    } else {
        const auto pi = market::steady_state(matrix);
        states.resize(m_total);
        for (auto& s : states)
            s = market_stream.bernoulli(pi.low) ? StoreState::Low : StoreState::High;
    }
    int position = static_cast<int>(market_stream.bounded(m_total));

    const int cap = policy.effective_cap(m_total);
    const int skip = policy.kind == PolicyKind::Secretary ? policy.effective_skip(cap) : 0;
    const auto continuation =
        continuous ? storeval::ContinuationValues{} : storeval::solve_continuation(params);

    EpisodeTrace trace;
    trace.params = params;
    trace.policy = policy;
    trace.reward_model = options.reward_model;
    trace.seed = seed;
    trace.skip_used = skip;
    trace.explore_cap_used = cap;
    trace.initial_position = position;
    trace.periods.reserve(periods);

    std::vector<double> rewards(m_total);
    std::vector<int> order;
    order.reserve(m_total - 1);

    for (long t = 0; t < periods; ++t) {
        if (continuous) {
            for (auto& r : rewards) r = market_stream.u01();
        } else {
            for (int j = 0; j < m_total; ++j) rewards[j] = market::reward(states[j], params);
        }

        // Fresh exploration order over the other M-1 stores, drawn every
        // period regardless of policy so equal seeds share one market path.
        order.clear();
        for (int j = 0; j < m_total; ++j)
            if (j != position) order.push_back(j);
        market_stream.shuffle(order);

        PeriodWalk walk(rewards, states, order, position, params,
                        options.reward_model, continuation);
        WalkResult result;
        switch (policy.kind) {
            case PolicyKind::Secretary:
                result = walk_secretary(walk, cap, skip, options.reward_model);
                break;
            case PolicyKind::Reservation:
                result = walk_reservation(walk, cap, policy.reservation_reward, rewards);
                break;
            case PolicyKind::NoExploration:
                result = {0, position};
                break;
            case PolicyKind::RandomExploration:
                result = walk_fixed_count(
                    walk, static_cast<int>(policy_stream.bounded(cap + 1)));
                break;
            case PolicyKind::EpsilonGreedy: {
                const bool explore = policy_stream.u01() < policy.epsilon;
                result = walk_fixed_count(walk, explore && cap >= 1 ? 1 : 0);
                break;
            }
        }
        assert(result.chosen == position ||
               std::find(order.begin(), order.begin() + result.searches, result.chosen) !=
                   order.begin() + result.searches);

        PeriodRecord record;
        record.searches = result.searches;
        record.chosen_store = result.chosen;
        record.chosen_state = states[result.chosen];
        record.reward = rewards[result.chosen];
        record.net_surplus = record.reward - params.cost * record.searches;
        record.best_reward = *std::max_element(rewards.begin(), rewards.end());
        record.low_count = static_cast<int>(
            std::count(states.begin(), states.end(), StoreState::Low));
        trace.periods.push_back(record);

        position = result.chosen;
        states = market::transition_step(states, matrix, market_stream);
    }
    return trace;
}

RegretReport regret_report(const EpisodeTrace& trace, const market::MarketParams& params) {
    if (trace.periods.empty()) throw std::invalid_argument("trace must be non-empty");
    params.validate();

    double best_mean;
    if (trace.reward_model == RewardModel::ContinuousTest) {
        best_mean = 0.5; // every arm is U(0,1)
    } else if (params.frozen()) {
        best_mean = trace.periods.front().best_reward;
    } else {
        const auto pi = market::steady_state(market::transition_matrix(params));
        best_mean = pi.low * params.s_low + pi.high * params.s_high;
    }

    RegretReport report;
    report.horizon = static_cast<long>(trace.periods.size());
    double reward_sum = 0.0;
    double clairvoyant = 0.0;
    double discounted = 0.0;
    double weight = 1.0;
    for (const auto& p : trace.periods) {
        reward_sum += p.reward;
        clairvoyant += p.best_reward - p.net_surplus;
        discounted += weight * p.net_surplus;
        weight *= params.delta;
    }
    report.cumulative_regret = static_cast<double>(report.horizon) * best_mean - reward_sum;
    report.clairvoyant_regret = clairvoyant;
    report.discounted_net_surplus = discounted;
    return report;
}

std::vector<RegretReport> episode_reports(const market::MarketParams& params,
                                          const PolicySpec& policy, long periods,
                                          long replications, std::uint64_t master_seed,
                                          const SimOptions& options) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (replications > kMaxReplications || periods > kMaxPeriods ||
        periods > kMaxEpisodeWork / replications)
        throw std::length_error("simulation size exceeds the resource bound");

    std::vector<RegretReport> reports;
    reports.reserve(replications);
    for (long r = 0; r < replications; ++r) {
        const auto seed = rng::replication_seed(master_seed, static_cast<std::uint64_t>(r));
        reports.push_back(regret_report(run_episode(params, policy, periods, seed, options), params));
    }
    return reports;
}

namespace {

FieldStats summarize(const std::vector<double>& xs) {
    FieldStats stats;
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    stats.mean = sum / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - stats.mean) * (x - stats.mean);
        stats.variance = ss / (n - 1.0);
    }
    const double half = 1.959963984540054 * std::sqrt(stats.variance / n);
    stats.ci95_lo = stats.mean - half;
    stats.ci95_hi = stats.mean + half;
    return stats;
}

} // namespace

MonteCarloSummary monte_carlo(const market::MarketParams& params, const PolicySpec& policy,
                              long periods, long replications, std::uint64_t master_seed,
                              const SimOptions& options) {
    const auto reports = episode_reports(params, policy, periods, replications,
                                         master_seed, options);

    std::vector<double> cumulative(reports.size());
    std::vector<double> clairvoyant(reports.size());
    std::vector<double> discounted(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        cumulative[i] = reports[i].cumulative_regret;
        clairvoyant[i] = reports[i].clairvoyant_regret;
        discounted[i] = reports[i].discounted_net_surplus;
    }

    MonteCarloSummary summary;
    summary.replications = replications;
    summary.horizon = periods;
    summary.master_seed = master_seed;
    const int cap = policy.effective_cap(params.m_total);
    summary.explore_cap_used = cap;
    summary.skip_used = policy.kind == PolicyKind::Secretary ? policy.effective_skip(cap) : 0;
    summary.cumulative_regret = summarize(cumulative);
    summary.clairvoyant_regret = summarize(clairvoyant);
    summary.discounted_net_surplus = summarize(discounted);
    return summary;
}

} // namespace csearch::sim
