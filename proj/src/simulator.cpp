#include "idnc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idnc/belief.hpp"
#include "idnc/graph.hpp"
#include "idnc/rng.hpp"

namespace idnc {

const char* policy_name(PolicyKind p) {
    switch (p) {
        case PolicyKind::PF: return "PF";
        case PolicyKind::ML: return "ML";
        case PolicyKind::FVE: return "FVE";
        case PolicyKind::NVE: return "NVE";
        case PolicyKind::WVS_DD: return "WVS_DD";
    }
    throw std::logic_error("bad policy");
}

PolicyKind policy_from_name(const std::string& name) {
    if (name == "PF") return PolicyKind::PF;
    if (name == "ML") return PolicyKind::ML;
    if (name == "FVE") return PolicyKind::FVE;
    if (name == "NVE") return PolicyKind::NVE;
    if (name == "WVS_DD") return PolicyKind::WVS_DD;
    throw std::invalid_argument("unknown policy: " + name);
}

void FrameConfig::validate() const {
    if (num_receivers <= 0 || num_packets <= 0)
        throw std::invalid_argument("frame needs at least one receiver and one packet");
    if (channels.receivers() != num_receivers) throw std::invalid_argument("channel size mismatch");
    if (demand.receivers() != num_receivers || demand.packets() != num_packets)
        throw std::invalid_argument("demand size mismatch");
    channels.validate();
    if (!(bias_exponent >= 1.0)) throw std::invalid_argument("bias exponent must be >= 1");
}

namespace {

struct InvariantChecker {
    const FrameConfig& cfg;
    bool was_complete = false;

    void check(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker,
               const ActualNetwork& net) {
        if (!cfg.check_invariants) return;
        for (ReceiverId i = 0; i < cfg.num_receivers; ++i) {
            for (PacketId j = 0; j < cfg.num_packets; ++j) {
                const bool uncertain = is_uncertain(sfm.at(i, j));
                if (uncertain != (tracker.at(i, j) > 0))
                    throw std::logic_error("theta > 0 iff uncertain violated");
                if (sfm.at(i, j) == ReceptionStatus::Has && !net[i].holds[j])
                    throw std::logic_error("perceived Has outside actual holdings");
            }
        }
        const bool complete = is_actually_complete(net);
        if (was_complete && !complete) throw std::logic_error("actual completion regressed");
        was_complete = complete;
    }
};

}  // namespace

namespace {

ChannelParams effective_channels(const FrameConfig& cfg) {
    // PF gets oracle feedback: the reverse channel never erases.
    ChannelParams channels = cfg.channels;
    if (cfg.policy == PolicyKind::PF) {
        channels.q.assign(cfg.num_receivers, 0.0);
        channels.reciprocal = false;
    }
    return channels;
}

}  // namespace

InitialPhaseResult simulate_initial_phase(const FrameConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    const int m = cfg.num_receivers;
    const int n = cfg.num_packets;
    const ChannelParams channels = effective_channels(cfg);

    std::vector<std::vector<std::uint8_t>> received(m, std::vector<std::uint8_t>(n, 0));
    std::vector<std::vector<std::uint8_t>> heard(m, std::vector<std::uint8_t>(n, 0));
    for (PacketId j = 0; j < n; ++j) {
        for (ReceiverId i = 0; i < m; ++i) {
            received[i][j] = rand_bernoulli(rng, 1.0 - channels.p[i]) ? 1 : 0;
            heard[i][j] = rand_bernoulli(rng, 1.0 - channels.q[i]) ? 1 : 0;
        }
    }
    InitialPhaseResult out;
    auto pair = apply_initial_phase(received, heard, cfg.demand);
    out.sfm = std::move(pair.first);
    out.tracker = std::move(pair.second);
    out.net.resize(m);
    for (ReceiverId i = 0; i < m; ++i) {
        out.net[i].holds.assign(n, 0);
        out.net[i].wants = cfg.demand.wants[i];
        for (PacketId j = 0; j < n; ++j) out.net[i].holds[j] = received[i][j];
    }
    return out;
}

FrameMetrics run_frame(const FrameConfig& cfg, std::mt19937_64& rng,
                       std::vector<TraceEvent>* trace) {
    cfg.validate();
    const int m = cfg.num_receivers;
    const int n = cfg.num_packets;
    const int max_recovery = cfg.max_timeslots > 0 ? cfg.max_timeslots : 50 * n;
    const ChannelParams channels = effective_channels(cfg);

    InitialPhaseResult initial = simulate_initial_phase(cfg, rng);
    StateFeedbackMatrix& sfm = initial.sfm;
    AttemptTracker& tracker = initial.tracker;
    ActualNetwork& net = initial.net;
    if (cfg.policy == PolicyKind::PF) {
        for (ReceiverId i = 0; i < m; ++i)
            for (PacketId j = 0; j < n; ++j)
                if (is_uncertain(sfm.at(i, j))) throw std::logic_error("PF produced uncertainty");
    }

    FrameMetrics metrics;
    metrics.decoding_delay.assign(m, 0);
    metrics.completed = is_actually_complete(net);
    metrics.completion_delay = 0;

    InvariantChecker checker{cfg};
    checker.check(sfm, tracker, net);

    std::vector<MlRule> rules;
    rules.reserve(m);
    for (ReceiverId i = 0; i < m; ++i) rules.emplace_back(channels.p[i], channels.q[i]);

    // Vertices of a reactivated receiver stay active until a feedback from it
    // is heard, regardless of what the hiding policy would now estimate.
    std::vector<std::uint8_t> reactivated(m, 0);

    const auto include_uncertain = [&](ReceiverId i, PacketId j) {
        if (reactivated[i]) return true;
        switch (cfg.policy) {
            case PolicyKind::PF: return true;  // never consulted
            case PolicyKind::ML: return rules[i].decide(tracker.at(i, j)) == MlDecision::Lost;
            case PolicyKind::FVE: return false;
            case PolicyKind::NVE:
            case PolicyKind::WVS_DD: return true;
        }
        return true;
    };

    SelectionPolicy selection;
    selection.objective = cfg.policy == PolicyKind::WVS_DD ? Objective::DecodingDelay
                                                           : Objective::CompletionDelay;
    selection.bias_exponent = cfg.bias_exponent;
    selection.secondary_weighting = cfg.secondary_weighting;
    selection.recompute_modified = cfg.recompute_modified;

    // --- recovery phase ---
    int slot = n;
    while (!is_perceived_complete(sfm)) {
        if (metrics.recovery_transmissions >= max_recovery) {
            metrics.truncated = true;
            break;
        }

        IdncGraph graph = build_graph(sfm, include_uncertain);
        for (ReceiverId i = 0; i < m; ++i)
            if (reactivate_if_exhausted(graph, i)) reactivated[i] = 1;
        const TransmissionPlan plan = select_transmission(graph, sfm, tracker, channels, selection);
        if (plan.empty()) break;  // nothing selectable: perceived completion pending
        ++metrics.recovery_transmissions;

        TraceEvent event;
        event.slot = slot;
        event.coded = plan.coded;
        event.targets = plan.targets;
        event.delay_increment.assign(m, 0);

        // forward channel: the broadcast reaches targeted and untargeted
        // receivers alike
        std::vector<std::uint8_t> got(m, 0);
        for (ReceiverId i = 0; i < m; ++i) got[i] = rand_bernoulli(rng, 1.0 - channels.p[i]) ? 1 : 0;
        event.received = got;

        for (ReceiverId i = 0; i < m; ++i) {
            if (!got[i]) continue;
            const bool outstanding = net[i].wants_outstanding();
            const DecodeResult result = decode_effect(plan.coded, net[i]);
            if (outstanding) {
                const bool useful = result.effect == DecodeEffect::InstantlyDecodable &&
                                    net[i].wants[result.packet];
                if (!useful) {
                    metrics.decoding_delay[i] += 1;
                    event.delay_increment[i] = 1;
                }
            }
            if (result.effect == DecodeEffect::InstantlyDecodable) net[i].holds[result.packet] = 1;
        }

        if (!metrics.completed && is_actually_complete(net)) {
            metrics.completed = true;
            metrics.completion_delay = metrics.recovery_transmissions;
        }

        // feedback: only targeted receivers answer, and only when the coded
        // packet reached them; the ACK is cumulative and erasable
        for (const PlanTarget& t : plan.targets) {
            const ReceiverId i = t.receiver;
            const bool feedback_heard = got[i] && rand_bernoulli(rng, 1.0 - channels.q[i]);
            if (feedback_heard) {
                ++metrics.feedback_heard;
                apply_heard_feedback(sfm, tracker, i, net[i].holds, slot);
                reactivated[i] = 0;
                event.heard_from.push_back(i);
            } else {
                ++metrics.feedback_unheard;
                if (cfg.policy != PolicyKind::PF) {
                    // unheard: lost forward, or received with the ACK erased
                    tracker.mutable_at(i, t.packet) += 1;
                    const ReceptionStatus s = sfm.at(i, t.packet);
                    if (!is_uncertain(s))
                        sfm.set(i, t.packet, is_wanted_lacking(s)
                                                 ? ReceptionStatus::UncertainWanted
                                                 : ReceptionStatus::UncertainUnwanted);
                }
            }
        }

        checker.check(sfm, tracker, net);
        if (trace) trace->push_back(std::move(event));
        ++slot;
    }

    if (!metrics.truncated && !metrics.completed)
        throw std::logic_error("perceived completion without actual completion");

    double total = 0.0;
    for (int d : metrics.decoding_delay) total += d;
    metrics.mean_decoding_delay = total / m;
    return metrics;
}

FrameMetrics run_frame(const FrameConfig& cfg, std::uint64_t seed, std::vector<TraceEvent>* trace) {
    std::mt19937_64 rng(seed);
    return run_frame(cfg, rng, trace);
}

namespace {

// Uniform draws on [lo, hi] shifted to hit the target mean exactly; redrawn
// when the shift would push a value out of the hard bounds.
std::vector<double> draw_mean_corrected(double mean, double lo, double hi, double bound_lo,
                                        double bound_hi, int count, std::mt19937_64& rng) {
    if (!(mean >= bound_lo && mean <= bound_hi)) throw std::invalid_argument("mean out of range");
    std::vector<double> values(count);
    if (count == 1) {
        values[0] = mean;
        return values;
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        double sum = 0.0;
        for (auto& v : values) {
            v = lo + (hi - lo) * rand_u01(rng);
            sum += v;
        }
        const double shift = mean - sum / count;
        bool ok = true;
        for (auto& v : values) {
            v += shift;
            if (v < bound_lo || v > bound_hi) {
                ok = false;
                break;
            }
        }
        if (ok) return values;
    }
    throw std::invalid_argument("infeasible mean near boundary");
}

}  // namespace

HeterogeneousParams sample_heterogeneous_params(double mean_p, double mean_mu, int num_receivers,
                                                int num_packets, std::mt19937_64& rng) {
    if (!(mean_p > 0.0 && mean_p < 1.0)) throw std::invalid_argument("mean_p out of (0,1)");
    if (!(mean_mu > 0.0 && mean_mu <= 1.0)) throw std::invalid_argument("mean_mu out of (0,1]");
    if (num_receivers < 1 || num_packets < 1) throw std::invalid_argument("empty network");

    HeterogeneousParams out;
    constexpr double kEps = 1e-3;
    const double p_hi = std::min(2.0 * mean_p, 0.9);
    const double p_lo = std::max(kEps, 2.0 * mean_p - p_hi);
    out.p = draw_mean_corrected(mean_p, p_lo, p_hi, kEps / 2.0, 0.95, num_receivers, rng);

    const double mu_hi = std::min(2.0 * mean_mu, 1.0);
    const double mu_lo = std::max(0.0, 2.0 * mean_mu - mu_hi);
    out.mu = draw_mean_corrected(mean_mu, mu_lo, mu_hi, 0.0, 1.0, num_receivers, rng);

    // wants sets of size round(mu_i * N), then one adjustment pass so the
    // realized aggregate ratio matches mean_mu within 1/(M*N)
    out.wants.assign(num_receivers, std::vector<std::uint8_t>(num_packets, 0));
    std::vector<int> sizes(num_receivers);
    long total = 0;
    for (int i = 0; i < num_receivers; ++i) {
        sizes[i] = std::clamp(static_cast<int>(std::llround(out.mu[i] * num_packets)), 0, num_packets);
        total += sizes[i];
    }
    const long target = std::llround(mean_mu * num_receivers * num_packets);
    for (int i = 0; total != target && i < num_receivers; ++i) {
        if (total < target && sizes[i] < num_packets) {
            ++sizes[i];
            ++total;
        } else if (total > target && sizes[i] > 0) {
            --sizes[i];
            --total;
        }
    }

    std::vector<PacketId> pool(num_packets);
    for (int i = 0; i < num_receivers; ++i) {
        for (PacketId j = 0; j < num_packets; ++j) pool[j] = j;
        // partial Fisher-Yates: the first sizes[i] entries form the wants set
        for (int k = 0; k < sizes[i]; ++k) {
            const int pick = k + static_cast<int>(rand_below(rng, num_packets - k));
            std::swap(pool[k], pool[pick]);
            out.wants[i][pool[k]] = 1;
        }
        out.mu[i] = static_cast<double>(sizes[i]) / num_packets;
    }
    return out;
}

FrameConfig make_trial_config(double mean_p, double mean_mu, int num_receivers, int num_packets,
                              bool reciprocal, PolicyKind policy, double bias_exponent,
                              SecondaryWeighting secondary, bool recompute_modified,
                              int max_timeslots, std::mt19937_64& rng) {
    const HeterogeneousParams params =
        sample_heterogeneous_params(mean_p, mean_mu, num_receivers, num_packets, rng);

    FrameConfig cfg;
    cfg.num_receivers = num_receivers;
    cfg.num_packets = num_packets;
    cfg.channels.p = params.p;
    cfg.channels.reciprocal = reciprocal;
    cfg.channels.q.resize(num_receivers);
    for (int i = 0; i < num_receivers; ++i)
        cfg.channels.q[i] = reciprocal ? params.p[i] : params.p[i] * rand_u01(rng);
    cfg.demand = DemandProfile::from_masks(params.wants);
    cfg.policy = policy;
    cfg.bias_exponent = bias_exponent;
    cfg.secondary_weighting = secondary;
    cfg.recompute_modified = recompute_modified;
    cfg.max_timeslots = max_timeslots;
    return cfg;
}

}  // namespace idnc
