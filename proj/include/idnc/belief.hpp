// Belief over uncertain SFM entries: closed-form loss/reception posteriors
// given unheard feedback, the threshold decision rules, and a desk-scale
// exhaustive enumeration of the joint belief state used as a test oracle.
#pragma once

#include <utility>
#include <vector>

#include "idnc/sfm.hpp"
#include "idnc/types.hpp"

namespace idnc {

/// P( packet still lost | theta unheard attempts ) = (p / (p + (1-p) q))^theta.
/// Requires 0 < p < 1, 0 <= q < 1, theta >= 1; throws std::invalid_argument.
double p_loss(double p, double q, int theta);

/// Reciprocal-channel form (1 / (2 - p))^theta; equals p_loss(p, p, theta).
double p_loss_reciprocal(double p, int theta);

enum class MlDecision { Lost, Received };

/// Offline table of the decision thresholds T(n) = 2^(1/n) - 1, precomputed
/// up to n = 64 and computed on demand beyond.
class ThresholdTable {
public:
    static constexpr int kPrecomputed = 64;
    ThresholdTable();
    double threshold(int n) const;

private:
    double table_[kPrecomputed + 1];
};

const ThresholdTable& threshold_table();

/// Per-receiver cached decision rule: Lost iff (1-p) q / p <= T(theta),
/// i.e. iff P_loss >= 0.5. Ties resolve to Lost (keep the vertex active).
struct MlRule {
    double ratio;  // (1-p) q / p, computed once per receiver

    explicit MlRule(double p, double q);
    MlDecision decide(int theta) const;
};

MlDecision ml_entry_decision(double p, double q, int theta);

/// One joint realization of all uncertain entries.
struct BeliefStateEntry {
    std::uint64_t state;  // bit k set <=> k-th uncertain entry (row-major) realized lost
    double probability;
};

struct MlRealization {
    std::vector<std::pair<ReceiverId, PacketId>> entries;  // row-major uncertain coordinates
    std::uint64_t lost_mask = 0;                           // bit k <=> entries[k] lost
    double probability = 1.0;
};

/// Enumerates the full belief state b(s | F_U) over all 2^(sum |U_i|)
/// realizations. Throws std::invalid_argument beyond `cap` uncertain entries.
std::vector<BeliefStateEntry> enumerate_belief(const StateFeedbackMatrix& sfm,
                                               const AttemptTracker& tracker,
                                               const ChannelParams& channels, int cap = 16);

/// Exhaustive argmax of the belief state; ties break toward the smaller
/// lexicographic state encoding. Desk-scale oracle for the per-entry rule.
MlRealization ml_state_oracle(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker,
                              const ChannelParams& channels, int cap = 16);

std::vector<std::pair<ReceiverId, PacketId>> uncertain_entries(const StateFeedbackMatrix& sfm);

}  // namespace idnc
