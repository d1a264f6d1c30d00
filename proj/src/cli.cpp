#include "csearch/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "csearch/errors.hpp"
#include "csearch/io.hpp"
#include "csearch/market.hpp"
#include "csearch/policy_sim.hpp"
#include "csearch/secretary.hpp"

namespace csearch::cli {

namespace {

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    file << text;
}

std::vector<market::StoreState> parse_states(const std::string& text) {
    std::vector<market::StoreState> states;
    states.reserve(text.size());
    for (char c : text) {
        if (c == 'L' || c == 'l') states.push_back(market::StoreState::Low);
        else if (c == 'H' || c == 'h') states.push_back(market::StoreState::High);
        else throw std::invalid_argument("initial states must be a string of L/H");
    }
    return states;
}

const std::vector<int> kDefaultTableList = {1,  2,  3,  4,  5,  6,  7,  8,   9,   10, 11, 12,
                                            13, 14, 15, 16, 17, 18, 19, 20, 50, 100, 300};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"consumer-search market toolkit: stopping-rule solvers and a "
                 "seeded Monte-Carlo market simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key = value file (flags win)");

    // ---- table1 ----------------------------------------------------------
    auto* table_cmd = app.add_subcommand(
        "table1", "cutoffs and success probabilities of the stopping rule, per store count");
    std::vector<int> m_list = kDefaultTableList;
    std::string table_out;
    table_cmd->add_option("--m-list", m_list, "store counts, comma separated")
        ->delimiter(',');
    table_cmd->add_option("--out", table_out, "output file (default: stdout)");

    // ---- solve -----------------------------------------------------------
    auto* solve_cmd = app.add_subcommand(
        "solve", "backward-induction solution of the stopping problem (JSON)");
    int solve_stores = 0;
    std::string solve_out;
    solve_cmd->add_option("--stores", solve_stores, "number of stores")->required();
    solve_cmd->add_option("--out", solve_out, "output file (default: stdout)");

    // ---- curve -----------------------------------------------------------
    auto* curve_cmd = app.add_subcommand(
        "curve", "samples of the continuous value curve Y(m; M) = (m/M) ln(M/m)");
    double curve_stores = 0.0;
    int curve_points = 100;
    std::string curve_out;
    curve_cmd->add_option("--stores", curve_stores, "number of stores M")->required();
    curve_cmd->add_option("--points", curve_points, "number of samples (default 100)");
    curve_cmd->add_option("--out", curve_out, "output file (default: stdout)");

    // ---- equilibrium -----------------------------------------------------
    auto* eq_cmd = app.add_subcommand(
        "equilibrium", "reservation surplus and consumer values of the symmetric market (JSON)");
    double eq_beta = 0.5, eq_delta = 0.0, eq_cost = 0.0, eq_s_low = 1.0;
    std::optional<double> eq_s_high, eq_s_reservation;
    std::string eq_out;
    eq_cmd->add_option("--beta", eq_beta, "persistence probability")->required();
    eq_cmd->add_option("--delta", eq_delta, "discount factor")->required();
    eq_cmd->add_option("--cost", eq_cost, "search cost")->required();
    eq_cmd->add_option("--s-low", eq_s_low, "surplus at the low price")->required();
    eq_cmd->add_option("--s-high", eq_s_high,
                       "surplus at the high price (default: the reservation surplus)");
    eq_cmd->add_option("--s-reservation", eq_s_reservation,
                       "check this reservation surplus instead of deriving it");
    eq_cmd->add_option("--out", eq_out, "output file (default: stdout)");

    // ---- simulate --------------------------------------------------------
    auto* sim_cmd = app.add_subcommand(
        "simulate", "seeded Monte-Carlo market run; emits per-metric summary CSV");
    std::string policy_str = "secretary";
    market::MarketParams params;
    params.m_total = 10;
    params.beta_low = params.beta_high = 0.9;
    params.delta = 0.95;
    params.cost = 0.3;
    params.s_low = 10.0;
    params.s_high = 4.0;
    std::optional<double> sim_beta;
    long sim_periods = 100;
    long sim_reps = 100;
    std::uint64_t sim_seed = 1;
    sim::PolicySpec policy;
    std::optional<int> sim_skip, sim_cap;
    bool sim_continuous = false;
    std::string sim_initial, sim_out, sim_trace_out;
    sim_cmd->add_option("--policy", policy_str,
                        "secretary|reservation|none|random|egreedy (default secretary)")
        ->check(CLI::IsMember({"secretary", "reservation", "none", "random", "egreedy"}));
    sim_cmd->add_option("--stores", params.m_total, "number of stores (default 10)");
    sim_cmd->add_option("--beta", sim_beta, "sets both persistence probabilities");
    sim_cmd->add_option("--beta-low", params.beta_low, "P(stay Low) (default 0.9)");
    sim_cmd->add_option("--beta-high", params.beta_high, "P(stay High) (default 0.9)");
    sim_cmd->add_option("--delta", params.delta, "discount factor (default 0.95)");
    sim_cmd->add_option("--cost", params.cost, "per-search cost (default 0.3)");
    sim_cmd->add_option("--s-low", params.s_low, "low-price surplus (default 10)");
    sim_cmd->add_option("--s-high", params.s_high, "high-price surplus (default 4)");
    sim_cmd->add_option("--skip", sim_skip, "secretary skip count (default: horizon rule)");
    sim_cmd->add_option("--reservation-reward", policy.reservation_reward,
                        "reservation policy threshold");
    sim_cmd->add_option("--epsilon", policy.epsilon, "egreedy search probability");
    sim_cmd->add_option("--explore-cap", sim_cap, "max searches per period (default M-1)");
    sim_cmd->add_option("--periods", sim_periods, "periods per episode (default 100)");
    sim_cmd->add_option("--reps", sim_reps, "independent replications (default 100)");
    sim_cmd->add_option("--seed", sim_seed, "64-bit master seed (default 1)");
    sim_cmd->add_flag("--continuous-test-mode", sim_continuous,
                      "validation harness: i.i.d. U(0,1) rewards instead of the market");
    sim_cmd->add_option("--initial-states", sim_initial,
                        "explicit initial states as L/H characters, one per store");
    sim_cmd->add_option("--trace-out", sim_trace_out,
                        "also dump replication 0 as a per-period CSV to this file");
    sim_cmd->add_option("--out", sim_out, "output file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: argument: " << e.what() << '\n';
        return 2;
    }

    try {
        if (table_cmd->parsed()) {
            write_output(io::table_csv(secretary::table(m_list)), table_out, out);
        } else if (solve_cmd->parsed()) {
            const auto solution = secretary::backward_induction(solve_stores);
            write_output(io::solution_json(solution).dump(2) + "\n", solve_out, out);
        } else if (curve_cmd->parsed()) {
            write_output(io::curve_csv(curve_stores, curve_points), curve_out, out);
        } else if (eq_cmd->parsed()) {
            market::MarketParams eq_params;
            eq_params.m_total = 2;
            eq_params.beta_low = eq_params.beta_high = eq_beta;
            eq_params.delta = eq_delta;
            eq_params.cost = eq_cost;
            eq_params.s_low = eq_s_low;
            eq_params.s_high = eq_s_low; // placeholder until s_high is known
            eq_params.validate();
            const double s_r = eq_s_reservation ? *eq_s_reservation
                                                : market::reservation_surplus(eq_params);
            eq_params.s_high = eq_s_high ? *eq_s_high : s_r;
            eq_params.validate();
            const auto report = market::solve_fishman_system(eq_params, s_r);
            write_output(io::equilibrium_json(eq_params, report).dump(2) + "\n", eq_out, out);
        } else if (sim_cmd->parsed()) {
            if (sim_beta) params.beta_low = params.beta_high = *sim_beta;
            static const std::map<std::string, sim::PolicyKind> kinds = {
                {"secretary", sim::PolicyKind::Secretary},
                {"reservation", sim::PolicyKind::Reservation},
                {"none", sim::PolicyKind::NoExploration},
                {"random", sim::PolicyKind::RandomExploration},
                {"egreedy", sim::PolicyKind::EpsilonGreedy}};
            policy.kind = kinds.at(policy_str);
            policy.skip_count = sim_skip;
            policy.explore_cap = sim_cap;

            sim::SimOptions options;
            options.reward_model = sim_continuous ? sim::RewardModel::ContinuousTest
                                                  : sim::RewardModel::TwoPoint;
            if (!sim_initial.empty()) options.initial_states = parse_states(sim_initial);

            const auto summary =
                sim::monte_carlo(params, policy, sim_periods, sim_reps, sim_seed, options);
            write_output(io::summary_csv(summary, params, policy, options.reward_model),
                         sim_out, out);
            if (!sim_trace_out.empty()) {
                const auto trace = sim::run_episode(params, policy, sim_periods,
                                                    rng::replication_seed(sim_seed, 0), options);
                write_output(io::trace_csv(trace), sim_trace_out, out);
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "error: argument: " << e.what() << '\n';
        return 2;
    } catch (const InconsistencyError& e) {
        err << "error: numeric: " << e.what() << " (residual " << e.residual() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: numeric: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace csearch::cli
