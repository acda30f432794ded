// Core domain types: receivers, packets, channels, demand profiles and the
// per-receiver ground-truth reception state.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace idnc {

using ReceiverId = int;
using PacketId = int;

/// Forward/reverse erasure probabilities per receiver. p is the data-packet
/// erasure probability, q the feedback erasure probability.
struct ChannelParams {
    std::vector<double> p;
    std::vector<double> q;
    bool reciprocal = true;

    int receivers() const { return static_cast<int>(p.size()); }
    double p_bar(ReceiverId i) const { return 1.0 - p[i]; }

    static ChannelParams uniform(int num_receivers, double p_all, double q_all, bool reciprocal);

    // Throws std::invalid_argument on out-of-range probabilities, q != p in
    // reciprocal mode, or q >= p in non-reciprocal mode.
    void validate() const;
};

/// Which packets each receiver requests. mu[i] = |wants_i| / N.
struct DemandProfile {
    std::vector<std::vector<std::uint8_t>> wants;  // M x N flags
    std::vector<double> mu;
    double mu_mean = 0.0;

    int receivers() const { return static_cast<int>(wants.size()); }
    int packets() const { return wants.empty() ? 0 : static_cast<int>(wants[0].size()); }
    bool wanted(ReceiverId i, PacketId j) const { return wants[i][j] != 0; }

    static DemandProfile from_masks(std::vector<std::vector<std::uint8_t>> masks);
    void validate() const;  // mu consistent with masks to 1e-12
};

/// A receiver's true (hidden) state: what it actually holds and wants.
struct ReceiverTrueState {
    std::vector<std::uint8_t> holds;
    std::vector<std::uint8_t> wants;

    bool wants_outstanding() const {
        for (std::size_t j = 0; j < wants.size(); ++j)
            if (wants[j] && !holds[j]) return true;
        return false;
    }
};

using ActualNetwork = std::vector<ReceiverTrueState>;

}  // namespace idnc
