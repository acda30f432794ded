// State feedback matrix: the sender's per-(receiver, packet) view of the
// network, including entries left uncertain by unheard feedback, plus the
// attempt counters that drive the belief model.
#pragma once

#include <string>
#include <vector>

#include "idnc/types.hpp"

namespace idnc {

/// Per-entry perceived status. Uncertain entries keep their wanted/unwanted
/// tag so a later loss resolution needs no demand lookup.
enum class ReceptionStatus : std::uint8_t {
    Has,               //  0: received and confirmed by heard feedback
    LacksUndesired,    // -1: lost, receiver does not request it
    Wants,             // +1: lost, receiver requests it
    UncertainWanted,   //  x: attempted, feedback unheard, requested
    UncertainUnwanted  //  x: attempted, feedback unheard, not requested
};

inline bool is_uncertain(ReceptionStatus s) {
    return s == ReceptionStatus::UncertainWanted || s == ReceptionStatus::UncertainUnwanted;
}
inline bool is_wanted_lacking(ReceptionStatus s) {
    return s == ReceptionStatus::Wants || s == ReceptionStatus::UncertainWanted;
}
inline bool in_lacks(ReceptionStatus s) { return s != ReceptionStatus::Has; }

class StateFeedbackMatrix {
public:
    StateFeedbackMatrix() = default;
    StateFeedbackMatrix(int receivers, int packets)
        : receivers_(receivers), packets_(packets),
          entries_(static_cast<std::size_t>(receivers) * packets, ReceptionStatus::Has) {}

    int receivers() const { return receivers_; }
    int packets() const { return packets_; }

    ReceptionStatus at(ReceiverId i, PacketId j) const { return entries_[index(i, j)]; }
    void set(ReceiverId i, PacketId j, ReceptionStatus s) { entries_[index(i, j)] = s; }

    // Derived feedback sets of receiver i (ascending packet order).
    std::vector<PacketId> has_set(ReceiverId i) const;
    std::vector<PacketId> lacks_set(ReceiverId i) const;
    std::vector<PacketId> wants_set(ReceiverId i) const;      // W_i, uncertain-wanted included
    std::vector<PacketId> uncertain_set(ReceiverId i) const;  // U_i

    int wants_count(ReceiverId i) const;
    int certain_wants_count(ReceiverId i) const;  // |W_i \ U_i|
    bool wants_empty(ReceiverId i) const { return wants_count(i) == 0; }

    bool operator==(const StateFeedbackMatrix&) const = default;

private:
    std::size_t index(ReceiverId i, PacketId j) const {
        return static_cast<std::size_t>(i) * packets_ + j;
    }

    int receivers_ = 0;
    int packets_ = 0;
    std::vector<ReceptionStatus> entries_;
};

/// theta[i][j] counts attempts of packet j to receiver i since the sender
/// last heard a (cumulative) feedback from i. theta > 0 iff the entry is
/// uncertain.
struct AttemptTracker {
    int receivers = 0;
    int packets = 0;
    std::vector<int> theta;       // M x N row-major
    std::vector<int> last_heard;  // timeslot of last heard cumulative feedback, -1 never

    AttemptTracker() = default;
    AttemptTracker(int m, int n)
        : receivers(m), packets(n),
          theta(static_cast<std::size_t>(m) * n, 0), last_heard(m, -1) {}

    int at(ReceiverId i, PacketId j) const { return theta[static_cast<std::size_t>(i) * packets + j]; }
    int& mutable_at(ReceiverId i, PacketId j) { return theta[static_cast<std::size_t>(i) * packets + j]; }

    bool operator==(const AttemptTracker&) const = default;
};

/// Builds the SFM after the initial uncoded broadcast of all N packets with
/// per-packet, independently erasable ACK/NACK feedback from every receiver.
/// received[i][j]: packet j reached receiver i; heard[i][j]: its feedback
/// reached the sender. Throws std::invalid_argument on dimension mismatch.
std::pair<StateFeedbackMatrix, AttemptTracker> apply_initial_phase(
    const std::vector<std::vector<std::uint8_t>>& received,
    const std::vector<std::vector<std::uint8_t>>& heard,
    const DemandProfile& demand);

/// Applies a heard cumulative feedback from receiver i carrying its complete
/// reception set. Resolves every uncertain entry of i, refreshes stale
/// certain entries (silent decodes), zeroes the theta row and stamps
/// last_heard. Idempotent for the same payload.
void apply_heard_feedback(StateFeedbackMatrix& sfm, AttemptTracker& tracker, ReceiverId i,
                          const std::vector<std::uint8_t>& reception_set, int timeslot);

/// True when every receiver actually holds all packets it wants.
bool is_actually_complete(const ActualNetwork& net);

/// Sender-side stopping rule: no Wants and no uncertain-wanted entry remains
/// unconfirmed anywhere.
bool is_perceived_complete(const StateFeedbackMatrix& sfm);

// JSON snapshot of (sfm, tracker) for golden fixtures: entries as a 2-D array
// of "0" / "-1" / "1" / "x+" / "x-", theta as a 2-D integer array.
std::string snapshot_to_json(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker);
std::pair<StateFeedbackMatrix, AttemptTracker> snapshot_from_json(const std::string& text);

}  // namespace idnc
