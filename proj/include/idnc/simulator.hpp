// Seeded simulation of one frame: initial uncoded broadcast plus the coded
// recovery phase under a sender policy, with independent forward/reverse
// erasures and strict separation of actual and perceived state.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "idnc/selection.hpp"
#include "idnc/sfm.hpp"
#include "idnc/types.hpp"

namespace idnc {

/// Sender policies:
///  PF     - perfect feedback (q forced to 0), completion weights
///  ML     - threshold-rule hidden vertices over the estimated graph
///  FVE    - every uncertain vertex hidden until reactivation
///  NVE    - every uncertain vertex kept active
///  WVS_DD - no hiding, decoding-delay omega weights
enum class PolicyKind { PF, ML, FVE, NVE, WVS_DD };

const char* policy_name(PolicyKind p);
PolicyKind policy_from_name(const std::string& name);  // throws on unknown name

struct FrameConfig {
    int num_receivers = 0;
    int num_packets = 0;
    ChannelParams channels;
    DemandProfile demand;
    PolicyKind policy = PolicyKind::ML;
    double bias_exponent = 3.0;
    SecondaryWeighting secondary_weighting = SecondaryWeighting::PsiBased;
    bool recompute_modified = true;
    int max_timeslots = 0;        // recovery-transmission cap; 0 means 50 * N
    bool check_invariants = false;

    void validate() const;
};

struct TraceEvent {
    int slot = 0;  // absolute timeslot (initial phase occupies 0 .. N-1)
    std::vector<PacketId> coded;
    std::vector<PlanTarget> targets;
    std::vector<std::uint8_t> received;   // per receiver, this transmission
    std::vector<ReceiverId> heard_from;   // targeted receivers whose feedback arrived
    std::vector<int> delay_increment;     // per receiver

    bool operator==(const TraceEvent&) const = default;
};

struct FrameMetrics {
    bool completed = false;          // actual completion reached
    bool truncated = false;          // hit the timeslot cap before perceived completion
    int completion_delay = 0;        // recovery transmissions until actual completion
    int recovery_transmissions = 0;  // total recovery transmissions sent
    std::vector<int> decoding_delay;
    double mean_decoding_delay = 0.0;
    long feedback_heard = 0;
    long feedback_unheard = 0;       // targeted attempts with nothing arriving

    bool operator==(const FrameMetrics&) const = default;
};

FrameMetrics run_frame(const FrameConfig& cfg, std::mt19937_64& rng,
                       std::vector<TraceEvent>* trace = nullptr);
FrameMetrics run_frame(const FrameConfig& cfg, std::uint64_t seed,
                       std::vector<TraceEvent>* trace = nullptr);

struct InitialPhaseResult {
    StateFeedbackMatrix sfm;
    AttemptTracker tracker;
    ActualNetwork net;
};

/// The N uncoded broadcasts with per-packet lossy ACK/NACK feedback. Consumes
/// exactly 2*M*N draws in (packet, receiver) order; run_frame starts with the
/// same sequence, so a fresh rng with the frame seed reproduces this state.
InitialPhaseResult simulate_initial_phase(const FrameConfig& cfg, std::mt19937_64& rng);

struct HeterogeneousParams {
    std::vector<double> p;
    std::vector<double> mu;
    std::vector<std::vector<std::uint8_t>> wants;
};

/// Draws per-receiver erasure probabilities and demand ratios uniformly
/// around the requested means, then corrects affinely so the sample means hit
/// the targets exactly; wants sets get a final membership adjustment so the
/// realized aggregate ratio lands within 1/(M*N) of mean_mu. Throws
/// std::invalid_argument for infeasible means.
HeterogeneousParams sample_heterogeneous_params(double mean_p, double mean_mu, int num_receivers,
                                                int num_packets, std::mt19937_64& rng);

/// Per-trial frame construction used by experiments: heterogeneous p_i / mu_i
/// via the sampler, q_i = p_i under reciprocity or uniform on (0, p_i)
/// otherwise.
FrameConfig make_trial_config(double mean_p, double mean_mu, int num_receivers, int num_packets,
                              bool reciprocal, PolicyKind policy, double bias_exponent,
                              SecondaryWeighting secondary, bool recompute_modified,
                              int max_timeslots, std::mt19937_64& rng);

}  // namespace idnc
