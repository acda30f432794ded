#include "idnc/sfm.hpp"

#include <cmath>

#include "json.hpp"

namespace idnc {

ChannelParams ChannelParams::uniform(int num_receivers, double p_all, double q_all, bool reciprocal) {
    ChannelParams ch;
    ch.p.assign(num_receivers, p_all);
    ch.q.assign(num_receivers, q_all);
    ch.reciprocal = reciprocal;
    ch.validate();
    return ch;
}

void ChannelParams::validate() const {
    if (p.size() != q.size()) throw std::invalid_argument("channel vectors differ in length");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0 && p[i] < 1.0)) throw std::invalid_argument("p out of [0,1)");
        if (!(q[i] >= 0.0 && q[i] < 1.0)) throw std::invalid_argument("q out of [0,1)");
        if (reciprocal) {
            if (q[i] != p[i]) throw std::invalid_argument("reciprocal channels require q == p");
        } else if (q[i] > 0.0 && !(p[i] > q[i])) {
            throw std::invalid_argument("non-reciprocal channels require p > q");
        }
    }
}

DemandProfile DemandProfile::from_masks(std::vector<std::vector<std::uint8_t>> masks) {
    DemandProfile d;
    d.wants = std::move(masks);
    d.mu.resize(d.wants.size());
    const int n = d.packets();
    double total = 0.0;
    for (std::size_t i = 0; i < d.wants.size(); ++i) {
        if (static_cast<int>(d.wants[i].size()) != n)
            throw std::invalid_argument("ragged demand mask");
        int count = 0;
        for (auto w : d.wants[i]) count += w ? 1 : 0;
        d.mu[i] = n == 0 ? 0.0 : static_cast<double>(count) / n;
        total += d.mu[i];
    }
    d.mu_mean = d.wants.empty() ? 0.0 : total / static_cast<double>(d.wants.size());
    return d;
}

void DemandProfile::validate() const {
    const int n = packets();
    double total = 0.0;
    for (int i = 0; i < receivers(); ++i) {
        int count = 0;
        for (auto w : wants[i]) count += w ? 1 : 0;
        const double ratio = n == 0 ? 0.0 : static_cast<double>(count) / n;
        if (std::abs(ratio - mu[i]) > 1e-12) throw std::invalid_argument("mu inconsistent with mask");
        total += mu[i];
    }
    if (receivers() > 0 && std::abs(total / receivers() - mu_mean) > 1e-12)
        throw std::invalid_argument("mu_mean inconsistent");
}

std::vector<PacketId> StateFeedbackMatrix::has_set(ReceiverId i) const {
    std::vector<PacketId> out;
    for (PacketId j = 0; j < packets_; ++j)
        if (at(i, j) == ReceptionStatus::Has) out.push_back(j);
    return out;
}

std::vector<PacketId> StateFeedbackMatrix::lacks_set(ReceiverId i) const {
    std::vector<PacketId> out;
    for (PacketId j = 0; j < packets_; ++j)
        if (in_lacks(at(i, j))) out.push_back(j);
    return out;
}

std::vector<PacketId> StateFeedbackMatrix::wants_set(ReceiverId i) const {
    std::vector<PacketId> out;
    for (PacketId j = 0; j < packets_; ++j)
        if (is_wanted_lacking(at(i, j))) out.push_back(j);
    return out;
}

std::vector<PacketId> StateFeedbackMatrix::uncertain_set(ReceiverId i) const {
    std::vector<PacketId> out;
    for (PacketId j = 0; j < packets_; ++j)
        if (is_uncertain(at(i, j))) out.push_back(j);
    return out;
}

int StateFeedbackMatrix::wants_count(ReceiverId i) const {
    int count = 0;
    for (PacketId j = 0; j < packets_; ++j) count += is_wanted_lacking(at(i, j)) ? 1 : 0;
    return count;
}

int StateFeedbackMatrix::certain_wants_count(ReceiverId i) const {
    int count = 0;
    for (PacketId j = 0; j < packets_; ++j) count += at(i, j) == ReceptionStatus::Wants ? 1 : 0;
    return count;
}

std::pair<StateFeedbackMatrix, AttemptTracker> apply_initial_phase(
    const std::vector<std::vector<std::uint8_t>>& received,
    const std::vector<std::vector<std::uint8_t>>& heard,
    const DemandProfile& demand) {
    const int m = demand.receivers();
    const int n = demand.packets();
    auto check = [&](const std::vector<std::vector<std::uint8_t>>& grid) {
        if (static_cast<int>(grid.size()) != m) throw std::invalid_argument("grid rows != M");
        for (const auto& row : grid)
            if (static_cast<int>(row.size()) != n) throw std::invalid_argument("grid cols != N");
    };
    check(received);
    check(heard);

    StateFeedbackMatrix sfm(m, n);
    AttemptTracker tracker(m, n);
    for (ReceiverId i = 0; i < m; ++i) {
        for (PacketId j = 0; j < n; ++j) {
            if (!heard[i][j]) {
                sfm.set(i, j, demand.wanted(i, j) ? ReceptionStatus::UncertainWanted
                                                  : ReceptionStatus::UncertainUnwanted);
                tracker.mutable_at(i, j) = 1;
            } else if (received[i][j]) {
                sfm.set(i, j, ReceptionStatus::Has);
            } else {
                sfm.set(i, j, demand.wanted(i, j) ? ReceptionStatus::Wants
                                                  : ReceptionStatus::LacksUndesired);
            }
        }
    }
    return {std::move(sfm), std::move(tracker)};
}

void apply_heard_feedback(StateFeedbackMatrix& sfm, AttemptTracker& tracker, ReceiverId i,
                          const std::vector<std::uint8_t>& reception_set, int timeslot) {
    const int n = sfm.packets();
    if (static_cast<int>(reception_set.size()) != n)
        throw std::invalid_argument("reception set size != N");
    for (PacketId j = 0; j < n; ++j) {
        const ReceptionStatus s = sfm.at(i, j);
        if (reception_set[j]) {
            sfm.set(i, j, ReceptionStatus::Has);
        } else {
            switch (s) {
                case ReceptionStatus::Has:
                    // A confirmed reception can never be walked back.
                    throw std::logic_error("feedback contradicts a confirmed Has entry");
                case ReceptionStatus::UncertainWanted:
                    sfm.set(i, j, ReceptionStatus::Wants);
                    break;
                case ReceptionStatus::UncertainUnwanted:
                    sfm.set(i, j, ReceptionStatus::LacksUndesired);
                    break;
                default:
                    break;  // Wants / LacksUndesired stay as they are
            }
        }
        tracker.mutable_at(i, j) = 0;
    }
    tracker.last_heard[i] = timeslot;
}

bool is_actually_complete(const ActualNetwork& net) {
    for (const auto& r : net)
        if (r.wants_outstanding()) return false;
    return true;
}

bool is_perceived_complete(const StateFeedbackMatrix& sfm) {
    for (ReceiverId i = 0; i < sfm.receivers(); ++i)
        for (PacketId j = 0; j < sfm.packets(); ++j)
            if (is_wanted_lacking(sfm.at(i, j))) return false;
    return true;
}

namespace {

const char* status_token(ReceptionStatus s) {
    switch (s) {
        case ReceptionStatus::Has: return "0";
        case ReceptionStatus::LacksUndesired: return "-1";
        case ReceptionStatus::Wants: return "1";
        case ReceptionStatus::UncertainWanted: return "x+";
        case ReceptionStatus::UncertainUnwanted: return "x-";
    }
    throw std::logic_error("bad status");
}

ReceptionStatus status_from_token(const std::string& t) {
    if (t == "0") return ReceptionStatus::Has;
    if (t == "-1") return ReceptionStatus::LacksUndesired;
    if (t == "1") return ReceptionStatus::Wants;
    if (t == "x+") return ReceptionStatus::UncertainWanted;
    if (t == "x-") return ReceptionStatus::UncertainUnwanted;
    throw std::invalid_argument("bad status token: " + t);
}

}  // namespace

std::string snapshot_to_json(const StateFeedbackMatrix& sfm, const AttemptTracker& tracker) {
    nlohmann::json entries = nlohmann::json::array();
    nlohmann::json theta = nlohmann::json::array();
    for (ReceiverId i = 0; i < sfm.receivers(); ++i) {
        nlohmann::json erow = nlohmann::json::array();
        nlohmann::json trow = nlohmann::json::array();
        for (PacketId j = 0; j < sfm.packets(); ++j) {
            erow.push_back(status_token(sfm.at(i, j)));
            trow.push_back(tracker.at(i, j));
        }
        entries.push_back(std::move(erow));
        theta.push_back(std::move(trow));
    }
    nlohmann::json doc;
    doc["entries"] = std::move(entries);
    doc["theta"] = std::move(theta);
    return doc.dump();
}

std::pair<StateFeedbackMatrix, AttemptTracker> snapshot_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    const auto& entries = doc.at("entries");
    const auto& theta = doc.at("theta");
    const int m = static_cast<int>(entries.size());
    const int n = m == 0 ? 0 : static_cast<int>(entries.at(0).size());
    StateFeedbackMatrix sfm(m, n);
    AttemptTracker tracker(m, n);
    for (ReceiverId i = 0; i < m; ++i) {
        for (PacketId j = 0; j < n; ++j) {
            sfm.set(i, j, status_from_token(entries.at(i).at(j).get<std::string>()));
            tracker.mutable_at(i, j) = theta.at(i).at(j).get<int>();
        }
    }
    return {std::move(sfm), std::move(tracker)};
}

}  // namespace idnc
