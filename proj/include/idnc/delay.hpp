// Decoding-delay accounting: receiver classification for a transmission plan,
// the per-reception delay increment, the closed-form expected sum decoding
// delay increment, and its exhaustive desk-scale oracle.
#pragma once

#include <span>
#include <vector>

#include "idnc/selection.hpp"
#include "idnc/sfm.hpp"
#include "idnc/types.hpp"

namespace idnc {

struct ReceiverClassification {
    std::vector<ReceiverId> outstanding;         // O: perceived non-empty Wants
    std::vector<ReceiverId> fully_uncertain;     // F: W_i \ U_i empty
    std::vector<ReceiverId> untargeted;          // nu(kappa), incl. secondary-only targets
    std::vector<ReceiverId> targeted_new;        // tau_n: primary target never attempted
    std::vector<ReceiverId> targeted_uncertain;  // tau_u: primary target with theta >= 1
    std::vector<PacketId> attempted;             // per receiver; -1 outside tau_n + tau_u
};

/// Partitions the outstanding receivers for a plan. Throws
/// std::invalid_argument when the plan is inconsistent with the perceived
/// state, and std::logic_error if a fully uncertain receiver lands in tau_n
/// (impossible by definition; asserted rather than assumed).
ReceiverClassification classify_receivers(const StateFeedbackMatrix& sfm,
                                          const AttemptTracker& tracker,
                                          const TransmissionPlan& plan);

/// One receiver's decoding-delay increment for one transmission, evaluated
/// against its true state. Erased packets never add delay; a received packet
/// adds none only when it instantly decodes a packet in the true Wants set.
/// Caller guarantees the receiver's true Wants set is non-empty.
int actual_delay_increment(const ReceiverTrueState& state, std::span<const PacketId> coded,
                           bool received);

/// Closed-form expected sum decoding delay increment of a transmission:
///   sum_{nu} p_bar + sum_{tau_u} p_bar * P_recv(j) - sum_{F} p_bar * prod_{W_i} P_recv(h).
double expected_decoding_delay(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker,
                               const ChannelParams& channels, const TransmissionPlan& plan);

/// Exhaustive expectation: enumerates every realization of each receiver's
/// uncertain entries (belief-weighted) and the transmission's erasure
/// outcome, applying the definition-level increment per realization.
/// Independence across receivers lets the sum split per receiver. Caps:
/// M <= 6, total uncertain entries <= 12.
double expected_decoding_delay_oracle(const StateFeedbackMatrix& sfm,
                                      const AttemptTracker& tracker,
                                      const ChannelParams& channels,
                                      const TransmissionPlan& plan);

}  // namespace idnc
