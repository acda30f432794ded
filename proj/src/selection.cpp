#include "idnc/selection.hpp"

#include <algorithm>
#include <cmath>

namespace idnc {

namespace {

// Active (non-hidden) vertex counts per receiver, split by layer.
void active_counts(const IdncGraph& g, std::vector<int>& primary, std::vector<int>& secondary) {
    primary.assign(g.receivers(), 0);
    secondary.assign(g.receivers(), 0);
    for (const Vertex& v : g.vertices()) {
        if (v.hidden) continue;
        (v.primary ? primary : secondary)[v.receiver]++;
    }
}

}  // namespace

VertexWeighting make_completion_weights(const IdncGraph& g, const ChannelParams& channels,
                                        double bias_exponent) {
    VertexWeighting w;
    w.objective = Objective::CompletionDelay;
    w.objective_weight.resize(g.size());
    std::vector<int> cnt_p, cnt_s;
    active_counts(g, cnt_p, cnt_s);
    for (int v = 0; v < g.size(); ++v) {
        const Vertex& vx = g.vertex(v);
        const int count = vx.primary ? cnt_p[vx.receiver] : cnt_s[vx.receiver];
        const double base = static_cast<double>(count) / channels.p_bar(vx.receiver);
        w.objective_weight[v] = count == 0 ? 0.0 : std::pow(base, bias_exponent);
    }
    w.search_weight = w.objective_weight;
    return w;
}

VertexWeighting make_decoding_weights(const IdncGraph& g, const StateFeedbackMatrix& sfm,
                                      const AttemptTracker& tracker, const ChannelParams& channels,
                                      SecondaryWeighting secondary, double bias_exponent) {
    VertexWeighting w;
    w.objective = Objective::DecodingDelay;
    w.objective_weight.assign(g.size(), 0.0);
    w.search_weight.assign(g.size(), 0.0);
    std::vector<int> cnt_p, cnt_s;
    active_counts(g, cnt_p, cnt_s);
    for (int v = 0; v < g.size(); ++v) {
        const Vertex& vx = g.vertex(v);
        const ReceiverId i = vx.receiver;
        if (vx.primary) {
            const ReceptionStatus s = sfm.at(i, vx.packet);
            double omega = channels.p_bar(i);
            if (s == ReceptionStatus::UncertainWanted) {
                const double p = channels.p[i];
                omega *= p > 0.0 ? p_loss(p, channels.q[i], tracker.at(i, vx.packet)) : 0.0;
            }
            w.objective_weight[v] = omega;
            w.search_weight[v] = omega;
        } else if (secondary == SecondaryWeighting::PsiBased && cnt_s[i] > 0) {
            const double base = static_cast<double>(cnt_s[i]) / channels.p_bar(i);
            w.search_weight[v] = std::pow(base, bias_exponent);
        }
    }
    return w;
}

std::vector<int> weighted_vertex_search(const IdncGraph& g, const std::vector<double>& weights,
                                        VertexSet candidates, const SearchOptions& options) {
    std::vector<int> clique;
    std::vector<double> modified(g.size(), 0.0);
    bool stale = true;
    while (candidates.any()) {
        if (options.recompute_modified || stale) {
            candidates.for_each([&](int v) {
                double sum = 0.0;
                const auto row = g.adjacency_row(v);
                const auto cand = candidates.words();
                for (std::size_t k = 0; k < cand.size(); ++k) {
                    std::uint64_t bits = row[k] & cand[k];
                    while (bits) {
                        sum += weights[k * 64 + std::countr_zero(bits)];
                        bits &= bits - 1;
                    }
                }
                modified[v] = weights[v] * sum;
            });
            stale = false;
        }
        int best = -1;
        candidates.for_each([&](int v) {
            if (best < 0 || modified[v] > modified[best] ||
                (modified[v] == modified[best] && weights[v] > weights[best]))
                best = v;
        });
        clique.push_back(best);
        candidates.intersect(g.adjacency_row(best));
    }
    return clique;
}

namespace {

struct CliqueSearch {
    const IdncGraph& g;
    const std::vector<double>& w;
    std::vector<int> current;
    std::vector<int> best;
    double current_weight = 0.0;
    double best_weight = -1.0;

    void expand(const VertexSet& candidates) {
        if (current_weight > best_weight) {
            best_weight = current_weight;
            best = current;
        }
        std::vector<int> order;
        candidates.for_each([&](int v) { order.push_back(v); });
        std::vector<double> suffix(order.size() + 1, 0.0);
        for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k)
            suffix[k] = suffix[k + 1] + w[order[k]];
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (current_weight + suffix[k] <= best_weight) return;  // cannot strictly improve
            const int v = order[k];
            VertexSet next(g.size());
            for (std::size_t t = k + 1; t < order.size(); ++t)
                if (g.adjacent(v, order[t])) next.set(order[t]);
            current.push_back(v);
            current_weight += w[v];
            expand(next);
            current.pop_back();
            current_weight -= w[v];
        }
    }
};

}  // namespace

std::vector<int> exact_max_weight_clique(const IdncGraph& g, const std::vector<double>& weights,
                                         int cap) {
    if (g.size() > cap) throw std::invalid_argument("exact clique search cap exceeded");
    for (double w : weights)
        if (w < 0.0) throw std::invalid_argument("clique weights must be non-negative");
    CliqueSearch search{g, weights, {}, {}, 0.0, -1.0};
    VertexSet all(g.size());
    for (int v = 0; v < g.size(); ++v) all.set(v);
    search.expand(all);
    return search.best;
}

void enumerate_cliques(const IdncGraph& g,
                       const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> current;
    const std::function<void(int)> walk = [&](int from) {
        for (int v = from; v < g.size(); ++v) {
            bool ok = true;
            for (int u : current)
                if (!g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            current.push_back(v);
            fn(current);
            walk(v + 1);
            current.pop_back();
        }
    };
    walk(0);
}

const PlanTarget* TransmissionPlan::target_for(ReceiverId i) const {
    for (const auto& t : targets)
        if (t.receiver == i) return &t;
    return nullptr;
}

std::vector<int> TransmissionPlan::vertex_ids() const {
    std::vector<int> ids;
    ids.reserve(targets.size());
    for (const auto& t : targets) ids.push_back(t.vertex);
    return ids;
}

TransmissionPlan plan_from_vertices(const IdncGraph& g, const std::vector<int>& primary_ids,
                                    const std::vector<int>& secondary_ids) {
    TransmissionPlan plan;
    auto add = [&](const std::vector<int>& ids, bool primary) {
        for (int v : ids) {
            const Vertex& vx = g.vertex(v);
            plan.targets.push_back({vx.receiver, vx.packet, primary, v});
        }
    };
    add(primary_ids, true);
    add(secondary_ids, false);
    std::sort(plan.targets.begin(), plan.targets.end(),
              [](const PlanTarget& a, const PlanTarget& b) { return a.receiver < b.receiver; });
    for (const auto& t : plan.targets) plan.coded.push_back(t.packet);
    std::sort(plan.coded.begin(), plan.coded.end());
    plan.coded.erase(std::unique(plan.coded.begin(), plan.coded.end()), plan.coded.end());
    return plan;
}

TransmissionPlan select_transmission(IdncGraph& g, const StateFeedbackMatrix& sfm,
                                     const AttemptTracker& tracker, const ChannelParams& channels,
                                     const SelectionPolicy& policy) {
    for (ReceiverId i = 0; i < g.receivers(); ++i) reactivate_if_exhausted(g, i);

    const VertexWeighting weights =
        policy.objective == Objective::CompletionDelay
            ? make_completion_weights(g, channels, policy.bias_exponent)
            : make_decoding_weights(g, sfm, tracker, channels, policy.secondary_weighting,
                                    policy.bias_exponent);
    const SearchOptions options{policy.recompute_modified};

    VertexSet primary_candidates(g.size());
    for (int v = 0; v < g.size(); ++v) {
        const Vertex& vx = g.vertex(v);
        if (vx.primary && !vx.hidden) primary_candidates.set(v);
    }
    const auto kappa_rho = weighted_vertex_search(g, weights.search_weight, primary_candidates, options);
    if (kappa_rho.empty()) return {};

    std::vector<std::uint8_t> targeted(g.receivers(), 0);
    for (int v : kappa_rho) targeted[g.vertex(v).receiver] = 1;

    VertexSet secondary_candidates(g.size());
    for (int v = 0; v < g.size(); ++v) {
        const Vertex& vx = g.vertex(v);
        if (!vx.primary && !vx.hidden && !targeted[vx.receiver]) secondary_candidates.set(v);
    }
    for (int v : kappa_rho) secondary_candidates.intersect(g.adjacency_row(v));
    const auto kappa_sigma =
        weighted_vertex_search(g, weights.search_weight, secondary_candidates, options);

    return plan_from_vertices(g, kappa_rho, kappa_sigma);
}

double clique_weight(const std::vector<double>& weights, const std::vector<int>& vertex_ids) {
    double total = 0.0;
    for (int v : vertex_ids) total += weights[v];
    return total;
}

}  // namespace idnc
