// Batch experiment runner and inspection CLI.
//
//   idnc_sim run <config> [--seed S] [--threads K] [--output PATH] [--format csv|json]
//   idnc_sim verify [--level quick|full] [--threads K]
//   idnc_sim demo [--receivers M] [--packets N] [--mu X] [--p X] [--policy NAME]
//                 [--seed S] [--non-reciprocal] [--dot PATH]
//
// Setting IDNC_SINGLE_THREAD forces single-threaded trial execution.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "idnc/experiment.hpp"
#include "idnc/graph.hpp"
#include "idnc/rng.hpp"
#include "idnc/simulator.hpp"
#include "idnc/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

int cmd_run(const std::string& config_path, bool seed_set, std::uint64_t seed, int threads,
            std::string output, std::string format) {
    idnc::SweepConfig cfg = idnc::parse_sweep_config(read_file(config_path));
    if (seed_set) cfg.master_seed = seed;
    if (!format.empty()) cfg.format = format;
    if (output.empty()) output = cfg.output;
    if (output.empty()) output = cfg.format == "json" ? "results.json" : "results.csv";
    cfg.validate();

    const auto rows = idnc::run_experiment(cfg, threads);
    write_file(output, cfg.format == "json" ? idnc::rows_to_json(rows) : idnc::rows_to_csv(rows));
    std::cerr << "wrote " << rows.size() << " rows to " << output << "\n";
    return 0;
}

int cmd_verify(const std::string& level, int threads) {
    const auto scales = level == "full" ? idnc::verify::Scales::full()
                                        : idnc::verify::Scales::quick();
    bool all_pass = true;
    for (const auto& result : idnc::verify::run_all(scales, threads)) {
        std::printf("%s  %s — %s\n", result.pass ? "PASS" : "FAIL", result.name.c_str(),
                    result.detail.c_str());
        all_pass = all_pass && result.pass;
    }
    return all_pass ? 0 : 2;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(ids[k]);
    }
    return out;
}

int cmd_demo(int receivers, int packets, double mu, double p, const std::string& policy_name,
             std::uint64_t seed, bool reciprocal, const std::string& dot_path) {
    const idnc::PolicyKind policy = idnc::policy_from_name(policy_name);
    idnc::FrameConfig cfg;
    std::mt19937_64 rng(seed);
    if (p == 0.0) {
        // lossless demo: deterministic demand, no erasures anywhere
        std::vector<std::vector<std::uint8_t>> wants(receivers,
                                                     std::vector<std::uint8_t>(packets, 0));
        const int per = std::max(1, static_cast<int>(std::llround(mu * packets)));
        for (int i = 0; i < receivers; ++i)
            for (int j = 0; j < per; ++j) wants[i][(i + j) % packets] = 1;
        cfg.num_receivers = receivers;
        cfg.num_packets = packets;
        cfg.channels = idnc::ChannelParams::uniform(receivers, 0.0, 0.0, true);
        cfg.demand = idnc::DemandProfile::from_masks(wants);
        cfg.policy = policy;
    } else {
        cfg = idnc::make_trial_config(p, mu, receivers, packets, reciprocal, policy, 3.0,
                                      idnc::SecondaryWeighting::PsiBased, true, 0, rng);
    }

    if (!dot_path.empty()) {
        std::mt19937_64 peek(seed);
        if (p != 0.0) {
            // burn the sampler draws so the initial phase matches the run below
            std::mt19937_64 sampler(seed);
            idnc::make_trial_config(p, mu, receivers, packets, reciprocal, policy, 3.0,
                                    idnc::SecondaryWeighting::PsiBased, true, 0, sampler);
            peek = sampler;
        }
        const auto initial = idnc::simulate_initial_phase(cfg, peek);
        write_file(dot_path, idnc::to_dot(idnc::build_graph(initial.sfm)));
        std::cerr << "wrote post-initial-phase graph to " << dot_path << "\n";
    }

    std::vector<idnc::TraceEvent> trace;
    const idnc::FrameMetrics metrics = idnc::run_frame(cfg, rng, &trace);

    std::printf("policy=%s M=%d N=%d seed=%llu\n", idnc::policy_name(policy), receivers, packets,
                static_cast<unsigned long long>(seed));
    for (const auto& e : trace) {
        std::string targets;
        for (const auto& t : e.targets) {
            targets += " " + std::to_string(t.receiver) + ":" + std::to_string(t.packet) +
                       (t.primary ? "P" : "S");
        }
        std::vector<int> got;
        for (int i = 0; i < receivers; ++i)
            if (e.received[i]) got.push_back(i);
        std::vector<int> delayed;
        for (int i = 0; i < receivers; ++i)
            if (e.delay_increment[i]) delayed.push_back(i);
        std::printf("t=%d coded={%s} targets=[%s] received={%s} heard={%s} delay+={%s}\n", e.slot,
                    join_ids(e.coded).c_str(), targets.c_str(), join_ids(got).c_str(),
                    join_ids(e.heard_from).c_str(), join_ids(delayed).c_str());
    }
    std::printf("recovery transmissions: %d\n", metrics.recovery_transmissions);
    std::printf("completion delay: %d%s\n", metrics.completion_delay,
                metrics.truncated ? " (truncated)" : "");
    std::printf("decoding delay per receiver:");
    for (int d : metrics.decoding_delay) std::printf(" %d", d);
    std::printf("  (mean %.4f)\n", metrics.mean_decoding_delay);
    std::printf("feedback heard/unheard: %ld/%ld\n", metrics.feedback_heard,
                metrics.feedback_unheard);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IDNC broadcast simulator with lossy feedback"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a sweep config and write the result table");
    std::string config_path;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string output, format;
    run->add_option("config", config_path, "flat key = value config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config master seed");
    run->add_option("--threads", threads, "worker threads (0 = auto)");
    run->add_option("--output", output, "output path (overrides config)");
    run->add_option("--format", format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify", "run the oracle and property suites");
    std::string level = "quick";
    int verify_threads = 0;
    verify->add_option("--level", level, "quick (default) or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--threads", verify_threads, "worker threads (0 = auto)");

    auto* demo = app.add_subcommand("demo", "single seeded frame with a per-transmission trace");
    int d_receivers = 4, d_packets = 6;
    double d_mu = 0.5, d_p = 0.25;
    std::string d_policy = "ML";
    std::uint64_t d_seed = 1;
    bool d_nonreciprocal = false;
    std::string d_dot;
    demo->add_option("--receivers,-M", d_receivers, "number of receivers")->check(CLI::PositiveNumber);
    demo->add_option("--packets,-N", d_packets, "frame size")->check(CLI::PositiveNumber);
    demo->add_option("--mu", d_mu, "mean demand ratio");
    demo->add_option("--p", d_p, "mean erasure probability (0 = lossless)");
    demo->add_option("--policy", d_policy, "PF | ML | FVE | NVE | WVS_DD");
    demo->add_option("--seed", d_seed, "frame seed");
    demo->add_flag("--non-reciprocal", d_nonreciprocal, "sample q on (0, p) instead of q = p");
    demo->add_option("--dot", d_dot, "write the post-initial-phase IDNC graph as DOT");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed_opt->count() > 0, seed, threads, output, format);
        if (verify->parsed()) return cmd_verify(level, verify_threads);
        if (demo->parsed())
            return cmd_demo(d_receivers, d_packets, d_mu, d_p, d_policy, d_seed, !d_nonreciprocal,
                            d_dot);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
