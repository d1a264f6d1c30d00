#include "csearch/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "csearch/cli.hpp"
#include "csearch/secretary.hpp"

namespace io = csearch::io;
namespace secretary = csearch::secretary;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = csearch::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting") {
    CHECK(io::format_fixed(0.5, 3) == "0.500");
    CHECK(io::format_fixed(1.0, 3) == "1.000");
    CHECK(io::format_fixed(0.3715, 3) == "0.372");

    // The published table rounds M/e to four significant digits first.
    CHECK(io::format_fixed(io::round_significant(50.0 / std::exp(1.0), 4), 3) == "18.390");
    CHECK(io::format_fixed(io::round_significant(100.0 / std::exp(1.0), 4), 3) == "36.790");
    CHECK(io::format_fixed(io::round_significant(300.0 / std::exp(1.0), 4), 3) == "110.400");
    CHECK(io::format_fixed(io::round_significant(1.0 / std::exp(1.0), 4), 3) == "0.368");
    CHECK(io::round_significant(0.0, 4) == 0.0);

    const double x = 0.1 + 0.2;
    CHECK(std::stod(io::format_full(x)) == x); // full precision round-trips
}

TEST_CASE("table CSV matches frozen rows and round-trips") {
    const auto rows = secretary::table({1, 2, 3, 6, 50});
    const auto text = io::table_csv(rows);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "M,M_over_e,m_star,skip,Y0");
    CHECK(lines[1] == "1,0.368,0,0,1.000");
    CHECK(lines[2] == "2,0.736,0,0,0.500");
    CHECK(lines[3] == "3,1.104,1,0,0.500");
    CHECK(lines[4] == "6,2.207,2,1,0.381");
    CHECK(lines[5] == "50,18.390,18,17,0.373");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        REQUIRE(cells.size() == 5);
        const auto& row = rows[i - 1];
        CHECK(std::stoi(cells[0]) == row.m_total);
        CHECK(std::stoi(cells[2]) == row.m_star_approx);
        CHECK(std::stoi(cells[3]) == row.skip_count);
        // Reals reproduce the in-memory value at the documented 3 decimals.
        CHECK(std::abs(std::stod(cells[4]) - row.y0) <= 5e-4);
    }
}

TEST_CASE("solution JSON round-trips") {
    const auto solution = secretary::backward_induction(10);
    const auto j = io::solution_json(solution);
    const auto parsed = nlohmann::json::parse(j.dump());
    CHECK(parsed["m_total"] == 10);
    CHECK(parsed["exact_cutoff"] == 4);
    CHECK(parsed["approx_cutoff"] == 3);
    CHECK(parsed["optimal_value"].get<double>() == solution.optimal_value);
    REQUIRE(parsed["y_values"].size() == solution.y_values.size());
    for (std::size_t i = 0; i < solution.y_values.size(); ++i)
        CHECK(parsed["y_values"][i].get<double>() == solution.y_values[i]);
    for (std::size_t i = 0; i < solution.u_values.size(); ++i)
        CHECK(parsed["u_values"][i].get<double>() == solution.u_values[i]);
}

TEST_CASE("cli table1 reproduces the default table") {
    const auto res = run({"table1"});
    CHECK(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 24); // header + 23 rows
    CHECK(lines[1] == "1,0.368,0,0,1.000");
    CHECK(lines[23] == "300,110.400,110,109,0.369");

    const auto subset = run({"table1", "--m-list", "10,20"});
    const auto sub_lines = lines_of(subset.out);
    REQUIRE(sub_lines.size() == 3);
    CHECK(sub_lines[1] == "10,3.679,3,2,0.366");
    CHECK(sub_lines[2] == "20,7.358,7,6,0.379");
}

TEST_CASE("cli solve emits both cutoffs") {
    const auto res = run({"solve", "--stores", "10"});
    CHECK(res.code == 0);
    const auto j = nlohmann::json::parse(res.out);
    CHECK(j["exact_cutoff"] == 4);
    CHECK(j["approx_cutoff"] == 3);
    CHECK(std::abs(j["optimal_value"].get<double>() - 0.39869) < 1e-4);
}

TEST_CASE("cli curve samples the value function") {
    const auto res = run({"curve", "--stores", "8", "--points", "16"});
    CHECK(res.code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "m,Y");
    const auto last = split(lines[16]);
    CHECK(std::stod(last[0]) == 8.0);
    CHECK(std::stod(last[1]) == 0.0);
    const auto mid = split(lines[8]); // m = M/2
    CHECK(std::stod(mid[1]) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("cli equilibrium solves the symmetric market") {
    const auto res = run({"equilibrium", "--beta", "1", "--delta", "0.5", "--cost", "1",
                          "--s-low", "10"});
    CHECK(res.code == 0);
    const auto j = nlohmann::json::parse(res.out);
    CHECK(j["s_reservation"].get<double>() == doctest::Approx(9.0));
    CHECK(j["v_low"].get<double>() == doctest::Approx(20.0));
    CHECK(j["v_high"].get<double>() == doctest::Approx(18.0));
}

TEST_CASE("cli exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);                       // missing subcommand
    CHECK(run({"bogus"}).code == 2);                // unknown subcommand
    CHECK(run({"solve"}).code == 2);                // missing required flag
    CHECK(run({"solve", "--stores", "10", "--nope", "1"}).code == 2);

    const auto invalid = run({"solve", "--stores", "0"});
    CHECK(invalid.code == 2);
    CHECK(invalid.err.rfind("error: argument:", 0) == 0);

    // An inconsistent reservation surplus is a numeric error, not an
    // argument error.
    const auto numeric = run({"equilibrium", "--beta", "1", "--delta", "0.5", "--cost", "1",
                              "--s-low", "10", "--s-reservation", "8.5"});
    CHECK(numeric.code == 3);
    CHECK(numeric.err.rfind("error: numeric:", 0) == 0);
}

TEST_CASE("cli simulate is reproducible byte for byte") {
    const std::vector<std::string> args = {"simulate", "--policy",  "secretary", "--stores",
                                           "8",        "--periods", "40",        "--reps",
                                           "25",       "--seed",    "123"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 4); // header + one row per metric
    const auto header = split(lines[0]);
    const auto row = split(lines[1]);
    REQUIRE(header.size() == row.size());
    CHECK(row[0] == "secretary");
    CHECK(row[14] == "cumulative_regret");
    CHECK(split(lines[2])[14] == "clairvoyant_regret");
    CHECK(split(lines[3])[14] == "discounted_net_surplus");

    const auto c = run({"simulate", "--policy", "secretary", "--stores", "8", "--periods",
                        "40", "--reps", "25", "--seed", "124"});
    CHECK(c.out != a.out);
}

TEST_CASE("cli config file feeds flags and flags win") {
    const std::string path = "test_config_tmp.ini";
    {
        std::ofstream f(path);
        f << "# simulation defaults\n[simulate]\nperiods = 17\nreps = 4\n";
    }
    const auto from_config = run({"--config", path, "simulate", "--seed", "5"});
    CHECK(from_config.code == 0);
    CHECK(split(lines_of(from_config.out)[1])[9] == "17");
    CHECK(split(lines_of(from_config.out)[1])[10] == "4");

    const auto overridden =
        run({"--config", path, "simulate", "--seed", "5", "--periods", "23"});
    CHECK(overridden.code == 0);
    CHECK(split(lines_of(overridden.out)[1])[9] == "23");
    CHECK(split(lines_of(overridden.out)[1])[10] == "4");
    std::remove(path.c_str());
}

TEST_CASE("cli writes output files and trace dumps") {
    const std::string out_path = "test_table_tmp.csv";
    const auto res = run({"table1", "--m-list", "5", "--out", out_path});
    CHECK(res.code == 0);
    CHECK(res.out.empty());
    std::ifstream f(out_path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(lines_of(buf.str())[1] == "5,1.839,1,0,0.417");
    std::remove(out_path.c_str());

    const std::string trace_path = "test_trace_tmp.csv";
    const auto sim_res = run({"simulate", "--stores", "5", "--periods", "6", "--reps", "2",
                              "--seed", "9", "--trace-out", trace_path});
    CHECK(sim_res.code == 0);
    std::ifstream tf(trace_path);
    REQUIRE(tf.good());
    std::stringstream tbuf;
    tbuf << tf.rdbuf();
    const auto tlines = lines_of(tbuf.str());
    CHECK(tlines.size() == 7); // header + 6 periods
    CHECK(tlines[0] == "t,searches,store,state,reward,net_surplus,best_reward,low_count");
    std::remove(trace_path.c_str());
}

} // TEST_SUITE
