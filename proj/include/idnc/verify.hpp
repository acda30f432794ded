// Self-check suite: independent brute-force oracles for the belief closed
// form, the ML threshold rules, the graph adjacency rules, the decoding-delay
// expectation, plus the statistical simulation checks. Used by the `verify`
// CLI subcommand and by the acceptance test binary.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "idnc/delay.hpp"
#include "idnc/selection.hpp"
#include "idnc/sfm.hpp"

namespace idnc::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Scales {
    int ml_instances = 1000;
    int decoding_instances = 2000;
    int equivalence_instances = 500;
    int graph_instances = 10000;
    int sanity_trials = 100000;
    int trajectory_checks = 50;
    int ordering_trials = 1000;
    std::uint64_t seed = 961748927;

    static Scales full() { return {}; }
    static Scales quick();
};

// Event-level conditional loss probability: enumerates per-attempt outcome
// sequences (forward loss / reception with heard feedback / reception with
// erased feedback) and conditions on no heard feedback. Independent of
// p_loss; theta <= 8.
double event_level_loss_probability(double p, double q, int theta);

struct RandomInstance {
    StateFeedbackMatrix sfm;
    AttemptTracker tracker;
    ChannelParams channels;
};

/// Random perceived state with uncertain entries (theta in [1, max_theta])
/// and at least one wanted-lacking entry.
RandomInstance random_instance(std::mt19937_64& rng, int min_m, int max_m, int min_n, int max_n,
                               int max_uncertain, int max_theta);

/// A random maximal clique plan over the instance (randomized search weights,
/// optional secondary extension). May be empty when no primary vertex exists.
TransmissionPlan random_plan(const RandomInstance& inst, std::mt19937_64& rng);

/// True when some untargeted outstanding receiver has a realization of its
/// uncertain entries under which the coded packet instantly decodes a wanted
/// packet. The closed-form expectation assumes such receivers gain nothing
/// from the transmission, so comparisons against the definition-level oracle
/// are restricted to instances where this cannot happen.
bool untargeted_instant_decode_possible(const StateFeedbackMatrix& sfm,
                                        const TransmissionPlan& plan);

CheckResult belief_correctness();
CheckResult ml_factorization(int instances, std::uint64_t seed);
CheckResult threshold_rules();
CheckResult decoding_closed_form(int instances, std::uint64_t seed);
CheckResult objective_equivalence(int instances, std::uint64_t seed);
CheckResult graph_correctness(int instances, std::uint64_t seed);
CheckResult simulation_sanity(int trials, int trajectory_checks, std::uint64_t seed);
CheckResult completion_ordering(int trials, std::uint64_t seed, int threads = 0);
CheckResult decoding_ordering(int trials, std::uint64_t seed, int threads = 0);
CheckResult determinism(std::uint64_t seed);

std::vector<CheckResult> run_all(const Scales& scales, int threads = 0);

}  // namespace idnc::verify
