#include "idnc/belief.hpp"

#include <cmath>

namespace idnc {

double p_loss(double p, double q, int theta) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p_loss: p out of (0,1)");
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("p_loss: q out of [0,1)");
    if (theta < 1) throw std::invalid_argument("p_loss: theta must be >= 1");
    const double base = p / (p + (1.0 - p) * q);
    return std::pow(base, theta);
}

double p_loss_reciprocal(double p, int theta) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p_loss_reciprocal: p out of (0,1)");
    if (theta < 1) throw std::invalid_argument("p_loss_reciprocal: theta must be >= 1");
    return std::pow(1.0 / (2.0 - p), theta);
}

ThresholdTable::ThresholdTable() {
    table_[0] = 0.0;
    for (int n = 1; n <= kPrecomputed; ++n) table_[n] = std::exp2(1.0 / n) - 1.0;
}

double ThresholdTable::threshold(int n) const {
    if (n < 1) throw std::invalid_argument("threshold index must be >= 1");
    if (n <= kPrecomputed) return table_[n];
    return std::exp2(1.0 / n) - 1.0;
}

const ThresholdTable& threshold_table() {
    static const ThresholdTable table;
    return table;
}

MlRule::MlRule(double p, double q) : ratio(p > 0.0 ? (1.0 - p) * q / p : HUGE_VAL) {}

MlDecision MlRule::decide(int theta) const {
    if (theta < 1) throw std::invalid_argument("ml decision needs theta >= 1");
    // One attempt with p > q needs no arithmetic: T(1) = 1 bounds the ratio.
    return ratio <= threshold_table().threshold(theta) ? MlDecision::Lost : MlDecision::Received;
}

MlDecision ml_entry_decision(double p, double q, int theta) {
    return MlRule(p, q).decide(theta);
}

std::vector<std::pair<ReceiverId, PacketId>> uncertain_entries(const StateFeedbackMatrix& sfm) {
    std::vector<std::pair<ReceiverId, PacketId>> out;
    for (ReceiverId i = 0; i < sfm.receivers(); ++i)
        for (PacketId j = 0; j < sfm.packets(); ++j)
            if (is_uncertain(sfm.at(i, j))) out.emplace_back(i, j);
    return out;
}

std::vector<BeliefStateEntry> enumerate_belief(const StateFeedbackMatrix& sfm,
                                               const AttemptTracker& tracker,
                                               const ChannelParams& channels, int cap) {
    const auto entries = uncertain_entries(sfm);
    const int k = static_cast<int>(entries.size());
    if (k > cap) throw std::invalid_argument("belief enumeration cap exceeded");

    std::vector<double> pl(k);
    for (int e = 0; e < k; ++e) {
        const auto [i, j] = entries[e];
        pl[e] = p_loss(channels.p[i], channels.q[i], tracker.at(i, j));
    }

    std::vector<BeliefStateEntry> belief;
    belief.reserve(std::size_t{1} << k);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
        double prob = 1.0;
        for (int e = 0; e < k; ++e) prob *= (s >> e) & 1 ? pl[e] : 1.0 - pl[e];
        belief.push_back({s, prob});
    }
    return belief;
}

MlRealization ml_state_oracle(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker,
                              const ChannelParams& channels, int cap) {
    MlRealization best;
    best.entries = uncertain_entries(sfm);
    const auto belief = enumerate_belief(sfm, tracker, channels, cap);
    best.lost_mask = 0;
    best.probability = belief.empty() ? 1.0 : belief[0].probability;
    for (const auto& entry : belief) {
        if (entry.probability > best.probability) {
            best.probability = entry.probability;
            best.lost_mask = entry.state;
        }
        // enumeration order is the lexicographic encoding, so ties keep the
        // smaller mask
    }
    return best;
}

}  // namespace idnc
