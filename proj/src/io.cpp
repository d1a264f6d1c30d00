#include "csearch/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace csearch::io {

std::string format_full(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double x, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, x);
    return buf;
}

double round_significant(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
    const double scale = std::pow(10.0, digits - 1 - exponent);
    return std::round(x * scale) / scale;
}

std::string table_csv(const std::vector<secretary::TableRow>& rows) {
    std::string out = "M,M_over_e,m_star,skip,Y0\n";
    for (const auto& row : rows) {
        out += std::to_string(row.m_total);
        out += ',';
        out += format_fixed(round_significant(row.m_over_e, 4), 3);
        out += ',';
        out += std::to_string(row.m_star_approx);
        out += ',';
        out += std::to_string(row.skip_count);
        out += ',';
        out += format_fixed(row.y0, 3);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json solution_json(const secretary::Solution& solution) {
    nlohmann::ordered_json j;
    j["m_total"] = solution.m_total;
    j["optimal_value"] = solution.optimal_value;
    j["exact_cutoff"] = solution.exact_cutoff;
    j["approx_cutoff"] = solution.approx_cutoff;
    j["y_values"] = solution.y_values;
    j["u_values"] = solution.u_values;
    return j;
}

std::string curve_csv(double m_total, int points) {
    if (points < 1) throw std::invalid_argument("points must be >= 1");
    std::string out = "m,Y\n";
    for (int i = 1; i <= points; ++i) {
        const double m = m_total * static_cast<double>(i) / points;
        out += format_full(m);
        out += ',';
        out += format_full(secretary::continuous_value(m, m_total));
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json equilibrium_json(const market::MarketParams& params,
                                        const market::EquilibriumReport& report) {
    nlohmann::ordered_json j;
    j["beta"] = params.beta_low;
    j["delta"] = params.delta;
    j["cost"] = params.cost;
    j["s_low"] = params.s_low;
    j["s_reservation"] = report.s_reservation;
    j["v_low"] = report.v_low;
    j["v_high"] = report.v_high;
    return j;
}

namespace {

void summary_row(std::string& out, const std::string& prefix, const char* metric,
                 const sim::FieldStats& stats) {
    out += prefix;
    out += metric;
    out += ',';
    out += format_full(stats.mean);
    out += ',';
    out += format_full(stats.variance);
    out += ',';
    out += format_full(stats.ci95_lo);
    out += ',';
    out += format_full(stats.ci95_hi);
    out += '\n';
}

} // namespace

std::string summary_csv(const sim::MonteCarloSummary& summary,
                        const market::MarketParams& params,
                        const sim::PolicySpec& policy,
                        sim::RewardModel reward_model) {
    std::string out =
        "policy,reward_model,stores,beta_low,beta_high,delta,cost,s_low,s_high,"
        "periods,replications,master_seed,explore_cap,skip,"
        "metric,mean,variance,ci95_lo,ci95_hi\n";

    std::ostringstream prefix;
    prefix << sim::policy_name(policy.kind) << ','
           << (reward_model == sim::RewardModel::TwoPoint ? "two_point" : "continuous_test") << ','
           << params.m_total << ','
           << format_full(params.beta_low) << ','
           << format_full(params.beta_high) << ','
           << format_full(params.delta) << ','
           << format_full(params.cost) << ','
           << format_full(params.s_low) << ','
           << format_full(params.s_high) << ','
           << summary.horizon << ','
           << summary.replications << ','
           << summary.master_seed << ','
           << summary.explore_cap_used << ','
           << summary.skip_used << ',';

    const std::string p = prefix.str();
    summary_row(out, p, "cumulative_regret", summary.cumulative_regret);
    summary_row(out, p, "clairvoyant_regret", summary.clairvoyant_regret);
    summary_row(out, p, "discounted_net_surplus", summary.discounted_net_surplus);
    return out;
}

std::string trace_csv(const sim::EpisodeTrace& trace) {
    std::string out = "t,searches,store,state,reward,net_surplus,best_reward,low_count\n";
    long t = 0;
    for (const auto& p : trace.periods) {
        out += std::to_string(t++);
        out += ',';
        out += std::to_string(p.searches);
        out += ',';
        out += std::to_string(p.chosen_store);
        out += ',';
        out += (p.chosen_state == market::StoreState::Low ? 'L' : 'H');
        out += ',';
        out += format_full(p.reward);
        out += ',';
        out += format_full(p.net_surplus);
        out += ',';
        out += format_full(p.best_reward);
        out += ',';
        out += std::to_string(p.low_count);
        out += '\n';
    }
    return out;
}

} // namespace csearch::io
