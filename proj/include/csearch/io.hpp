#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csearch/market.hpp"
#include "csearch/policy_sim.hpp"
#include "csearch/secretary.hpp"

namespace csearch::io {

// Shortest decimal string that parses back to exactly the same double.
std::string format_full(double x);

// printf-style fixed formatting, e.g. format_fixed(0.5, 3) == "0.500".
std::string format_fixed(double x, int places);

// Round to `digits` significant decimal digits (half away from zero).
double round_significant(double x, int digits);

// CSV with header M,M_over_e,m_star,skip,Y0. M_over_e is rounded to four
// significant digits before the three-decimal print, which is the rounding
// the published table uses; Y0 prints at three decimals.
std::string table_csv(const std::vector<secretary::TableRow>& rows);

nlohmann::ordered_json solution_json(const secretary::Solution& solution);

// CSV with header m,Y: `points` samples of the continuous value curve at
// m = m_total * i / points, i = 1..points. Full precision.
std::string curve_csv(double m_total, int points);

nlohmann::ordered_json equilibrium_json(const market::MarketParams& params,
                                        const market::EquilibriumReport& report);

// One row per regret metric, with the run configuration echoed on each row.
std::string summary_csv(const sim::MonteCarloSummary& summary,
                        const market::MarketParams& params,
                        const sim::PolicySpec& policy,
                        sim::RewardModel reward_model);

// Per-period dump of one episode.
std::string trace_csv(const sim::EpisodeTrace& trace);

} // namespace csearch::io
