#include "doctest.h"
#include "idnc/experiment.hpp"
#include "idnc/verify.hpp"

using namespace idnc;

namespace {

const char* kSmallConfig = R"(
# two-point sweep over p
sweep.axis = p
sweep.values = 0.2, 0.4
M = 5
N = 4
mu = 0.5
reciprocal = true
m = 3
policies = PF, ML
trials = 6
seed = 2024
)";

}  // namespace

TEST_CASE("config parser round-trips the flat key-value format") {
    const SweepConfig cfg = parse_sweep_config(kSmallConfig);
    CHECK(cfg.axis == SweepAxis::P);
    CHECK(cfg.values == std::vector<double>{0.2, 0.4});
    CHECK(cfg.num_receivers == 5);
    CHECK(cfg.num_packets == 4);
    CHECK(cfg.mean_mu == 0.5);
    CHECK(cfg.reciprocal);
    CHECK(cfg.bias_exponent == 3.0);
    CHECK(cfg.policies == std::vector<PolicyKind>{PolicyKind::PF, PolicyKind::ML});
    CHECK(cfg.trials == 6);
    CHECK(cfg.master_seed == 2024);
}

TEST_CASE("config parser rejects malformed input") {
    CHECK_THROWS_AS(parse_sweep_config("trials = 5\n"), std::invalid_argument);  // no sweep
    CHECK_THROWS_AS(parse_sweep_config("sweep.axis = z\nsweep.values = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep_config("sweep.axis = p\nsweep.values = 0.2\nbogus = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_sweep_config("sweep.axis = p\nsweep.axis = mu\nsweep.values = 0.2\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_sweep_config("sweep.axis = p\nsweep.values = 0.2\npolicies = XX\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_sweep_config("sweep.axis = p\nsweep.values = 0.2\ntrials = 0\npolicies = PF\n"),
        std::invalid_argument);
}

TEST_CASE("one row per (sweep point, policy)") {
    SweepConfig cfg = parse_sweep_config(kSmallConfig);
    cfg.values = {0.2};
    cfg.trials = 1;
    const auto rows = run_experiment(cfg, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].policy == PolicyKind::PF);
    CHECK(rows[1].policy == PolicyKind::ML);
    CHECK(rows[0].trials == 1);
    const std::string csv = rows_to_csv(rows);
    CHECK(csv.find("sweep_value,policy,mean_completion_delay,ci95_completion,"
                   "mean_decoding_delay,ci95_decoding,trials,truncated_count\n") == 0);
    // header + 2 data lines
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("experiment output is deterministic across reruns and thread counts") {
    const auto result = verify::determinism(11);
    INFO(result.detail);
    CHECK(result.pass);
}

TEST_CASE("changing the master seed changes the table") {
    SweepConfig cfg = parse_sweep_config(kSmallConfig);
    const std::string a = rows_to_csv(run_experiment(cfg, 1));
    cfg.master_seed = 999;
    const std::string b = rows_to_csv(run_experiment(cfg, 1));
    CHECK(a != b);
}

TEST_CASE("JSON mirror carries the same rows") {
    SweepConfig cfg = parse_sweep_config(kSmallConfig);
    cfg.values = {0.2};
    cfg.trials = 2;
    const auto rows = run_experiment(cfg, 1);
    const std::string json = rows_to_json(rows);
    CHECK(json.find("\"policy\": \"PF\"") != std::string::npos);
    CHECK(json.find("\"policy\": \"ML\"") != std::string::npos);
    CHECK(json.find("\"mean_completion_delay\"") != std::string::npos);
}

TEST_CASE("golden CSV for a pinned config and seed") {
    SweepConfig cfg;
    cfg.axis = SweepAxis::Mu;
    cfg.values = {0.5};
    cfg.num_receivers = 4;
    cfg.num_packets = 4;
    cfg.mean_p = 0.3;
    cfg.reciprocal = true;
    cfg.policies = {PolicyKind::ML};
    cfg.trials = 3;
    cfg.master_seed = 31337;
    const std::string csv = rows_to_csv(run_experiment(cfg, 1));
    // frozen from the first run of this configuration; guards the entire
    // seeded pipeline (sampler, channel draws, selection, aggregation)
    const std::string golden =
        "sweep_value,policy,mean_completion_delay,ci95_completion,"
        "mean_decoding_delay,ci95_decoding,trials,truncated_count\n"
        "0.5,ML,5.333333333333333,1.7285575232288657,"
        "0.91666666666666663,0.58890670832578496,3,0\n";
    INFO(csv);
    CHECK(csv == golden);
}
