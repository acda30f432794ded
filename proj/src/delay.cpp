#include "idnc/delay.hpp"

#include <algorithm>

#include "idnc/belief.hpp"
#include "idnc/graph.hpp"

namespace idnc {

ReceiverClassification classify_receivers(const StateFeedbackMatrix& sfm,
                                          const AttemptTracker& tracker,
                                          const TransmissionPlan& plan) {
    const int m = sfm.receivers();
    ReceiverClassification c;
    c.attempted.assign(m, -1);

    std::vector<const PlanTarget*> target(m, nullptr);
    for (const auto& t : plan.targets) {
        if (t.receiver < 0 || t.receiver >= m || t.packet < 0 || t.packet >= sfm.packets())
            throw std::invalid_argument("plan target out of range");
        if (target[t.receiver]) throw std::invalid_argument("two plan targets for one receiver");
        const ReceptionStatus s = sfm.at(t.receiver, t.packet);
        if (!in_lacks(s)) throw std::invalid_argument("plan targets a packet the receiver has");
        if (t.primary != is_wanted_lacking(s))
            throw std::invalid_argument("plan layer inconsistent with perceived state");
        target[t.receiver] = &t;
    }

    for (ReceiverId i = 0; i < m; ++i) {
        if (sfm.wants_empty(i)) continue;
        c.outstanding.push_back(i);
        const bool fully = sfm.certain_wants_count(i) == 0;
        if (fully) c.fully_uncertain.push_back(i);
        const PlanTarget* t = target[i];
        if (t == nullptr || !t->primary) {
            c.untargeted.push_back(i);
            continue;
        }
        c.attempted[i] = t->packet;
        const bool uncertain = is_uncertain(sfm.at(i, t->packet));
        if (uncertain != (tracker.at(i, t->packet) > 0))
            throw std::invalid_argument("tracker inconsistent with uncertain entries");
        if (!uncertain) {
            if (fully) throw std::logic_error("fully uncertain receiver with unattempted target");
            c.targeted_new.push_back(i);
        } else {
            c.targeted_uncertain.push_back(i);
        }
    }
    return c;
}

int actual_delay_increment(const ReceiverTrueState& state, std::span<const PacketId> coded,
                           bool received) {
    if (!received) return 0;
    const DecodeResult r = decode_effect(coded, state);
    if (r.effect == DecodeEffect::InstantlyDecodable && state.wants[r.packet]) return 0;
    return 1;
}

namespace {

double reception_probability(const AttemptTracker& tracker, const ChannelParams& channels,
                             ReceiverId i, PacketId j) {
    const double p = channels.p[i];
    if (p <= 0.0) return 1.0;  // with no forward loss, an unheard attempt means received
    return 1.0 - p_loss(p, channels.q[i], tracker.at(i, j));
}

}  // namespace

double expected_decoding_delay(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker,
                               const ChannelParams& channels, const TransmissionPlan& plan) {
    const ReceiverClassification c = classify_receivers(sfm, tracker, plan);
    double total = 0.0;
    for (ReceiverId i : c.untargeted) total += channels.p_bar(i);
    for (ReceiverId i : c.targeted_uncertain)
        total += channels.p_bar(i) * reception_probability(tracker, channels, i, c.attempted[i]);
    for (ReceiverId i : c.fully_uncertain) {
        double all_received = 1.0;
        for (PacketId h : sfm.wants_set(i))
            all_received *= reception_probability(tracker, channels, i, h);
        total -= channels.p_bar(i) * all_received;
    }
    return total;
}

double expected_decoding_delay_oracle(const StateFeedbackMatrix& sfm,
                                      const AttemptTracker& tracker,
                                      const ChannelParams& channels,
                                      const TransmissionPlan& plan) {
    const int m = sfm.receivers();
    if (m > 6) throw std::invalid_argument("oracle cap: M <= 6");
    int total_uncertain = 0;
    for (ReceiverId i = 0; i < m; ++i) total_uncertain += static_cast<int>(sfm.uncertain_set(i).size());
    if (total_uncertain > 12) throw std::invalid_argument("oracle cap: uncertain entries <= 12");
    if (plan.empty()) return 0.0;

    // Unheard-feedback events are independent across entries and receivers,
    // and a receiver's increment depends only on its own state, so the joint
    // enumeration factorizes into one exhaustive sum per receiver.
    double expected = 0.0;
    for (ReceiverId i = 0; i < m; ++i) {
        const auto uncertain = sfm.uncertain_set(i);
        const int k = static_cast<int>(uncertain.size());

        ReceiverTrueState state;
        state.holds.assign(sfm.packets(), 0);
        state.wants.assign(sfm.packets(), 0);
        for (PacketId j = 0; j < sfm.packets(); ++j) {
            const ReceptionStatus s = sfm.at(i, j);
            if (s == ReceptionStatus::Has) state.holds[j] = 1;
            if (is_wanted_lacking(s)) state.wants[j] = 1;
        }

        double expected_i = 0.0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            double weight = 1.0;
            for (int e = 0; e < k; ++e) {
                const double pr = reception_probability(tracker, channels, i, uncertain[e]);
                const bool received_entry = (mask >> e) & 1;
                state.holds[uncertain[e]] = received_entry ? 1 : 0;
                weight *= received_entry ? pr : 1.0 - pr;
            }
            if (!state.wants_outstanding()) continue;  // definition needs non-empty true Wants
            // erasure outcome of the current transmission: received adds the
            // definition-level increment, erased adds nothing
            expected_i += weight * channels.p_bar(i) *
                          actual_delay_increment(state, plan.coded, true);
        }
        expected += expected_i;
    }
    return expected;
}

}  // namespace idnc
