// Batch experiment runner: sweep one axis (p, mu, M or N) over a policy set,
// aggregate seeded independent trials, and emit a stable CSV/JSON table.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idnc/simulator.hpp"

namespace idnc {

enum class SweepAxis { P, Mu, M, N };

const char* sweep_axis_name(SweepAxis a);

struct SweepConfig {
    SweepAxis axis = SweepAxis::P;
    std::vector<double> values;

    int num_receivers = 20;
    int num_packets = 15;
    double mean_mu = 0.5;
    double mean_p = 0.25;
    bool reciprocal = true;
    double bias_exponent = 3.0;
    std::vector<PolicyKind> policies;
    int trials = 100;
    std::uint64_t master_seed = 1;
    int max_timeslots_factor = 50;
    SecondaryWeighting secondary_weighting = SecondaryWeighting::PsiBased;
    bool recompute_modified = true;

    std::string output;  // optional default output path
    std::string format = "csv";

    void validate() const;
};

/// Parses the flat key = value config format ('#' starts a comment).
/// Throws std::invalid_argument with a line-tagged message on bad input.
SweepConfig parse_sweep_config(const std::string& text);

struct ExperimentRow {
    double sweep_value = 0.0;
    PolicyKind policy = PolicyKind::PF;
    double mean_completion_delay = 0.0;
    double ci95_completion = 0.0;
    double mean_decoding_delay = 0.0;
    double ci95_decoding = 0.0;
    int trials = 0;
    int truncated_count = 0;
};

/// Runs trials independently (trial seed = splitmix chain over master, sweep
/// index, policy id, trial index) and aggregates means with 95% normal
/// half-widths over the non-truncated trials. threads = 0 picks the hardware
/// count; the IDNC_SINGLE_THREAD environment variable forces one thread.
/// Output is deterministic for a fixed config regardless of thread count.
std::vector<ExperimentRow> run_experiment(const SweepConfig& cfg, int threads = 0);

// 17 significant digits on all real columns; byte-stable for fixed seeds.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::string rows_to_json(const std::vector<ExperimentRow>& rows);

}  // namespace idnc
