// Clique selection: completion-delay weights psi, decoding-delay weights
// omega, the greedy maximum-weight vertex search with neighborhood-modified
// weights, and an exact branch-and-bound oracle for desk-scale graphs.
#pragma once

#include <functional>
#include <vector>

#include "idnc/belief.hpp"
#include "idnc/graph.hpp"
#include "idnc/sfm.hpp"

namespace idnc {

enum class Objective { CompletionDelay, DecodingDelay };

/// How the secondary layer is ordered under the decoding-delay objective,
/// where secondary deliveries carry no objective value of their own.
enum class SecondaryWeighting { PsiBased, ZeroWeight };

struct VertexWeighting {
    Objective objective = Objective::CompletionDelay;
    std::vector<double> objective_weight;  // summed over a clique by the oracle
    std::vector<double> search_weight;     // drives the greedy ordering
};

/// psi_i = (|W_i| / p_bar_i)^m over the policy's estimated state: |W_i| is the
/// receiver's count of active primary vertices, so hidden (estimated received)
/// entries do not inflate the weight. Secondary vertices use the count of
/// active secondary vertices in place of |W_i|.
VertexWeighting make_completion_weights(const IdncGraph& g, const ChannelParams& channels,
                                        double bias_exponent);

/// omega per vertex: p_bar for a certain wanted packet, p_bar * P_loss for an
/// uncertain wanted one, 0 for secondary vertices (searched by psi order or
/// kept at zero per `secondary`).
VertexWeighting make_decoding_weights(const IdncGraph& g, const StateFeedbackMatrix& sfm,
                                      const AttemptTracker& tracker, const ChannelParams& channels,
                                      SecondaryWeighting secondary, double bias_exponent);

struct SearchOptions {
    // Recompute modified weights on the shrinking candidate subgraph each
    // iteration; the cheaper once-computed variant exists for benchmarking.
    bool recompute_modified = true;
};

/// Greedy maximum-weight vertex search over `candidates`: each iteration
/// picks the vertex maximizing w(v) * sum of w over its candidate neighbors,
/// then restricts candidates to its neighborhood. Ties break toward higher
/// base weight, then lower (receiver, packet). Always returns a clique that
/// is maximal within the initial candidate set.
std::vector<int> weighted_vertex_search(const IdncGraph& g, const std::vector<double>& weights,
                                        VertexSet candidates, const SearchOptions& options = {});

/// Exhaustive max-total-weight clique (branch and bound), the test oracle for
/// the NP-hard selection problem. Weights must be non-negative; |V| <= cap.
/// Ties keep the clique found first in ascending-order DFS, i.e. the
/// lexicographically smallest vertex sequence.
std::vector<int> exact_max_weight_clique(const IdncGraph& g, const std::vector<double>& weights,
                                         int cap = 24);

/// Visits every non-empty clique of the graph (desk scale only).
void enumerate_cliques(const IdncGraph& g, const std::function<void(const std::vector<int>&)>& fn);

struct PlanTarget {
    ReceiverId receiver = 0;
    PacketId packet = 0;   // the packet this receiver decodes / is attempted
    bool primary = false;  // targeted through the primary layer
    int vertex = -1;       // index in the graph the plan was selected from

    bool operator==(const PlanTarget&) const = default;
};

/// kappa = kappa_rho (primary) + kappa_sigma (secondary) and the XOR set it
/// induces. Targets are kept in ascending receiver order.
struct TransmissionPlan {
    std::vector<PlanTarget> targets;
    std::vector<PacketId> coded;  // sorted distinct packet ids

    bool empty() const { return targets.empty(); }
    const PlanTarget* target_for(ReceiverId i) const;
    std::vector<int> vertex_ids() const;

    bool operator==(const TransmissionPlan&) const = default;
};

TransmissionPlan plan_from_vertices(const IdncGraph& g, const std::vector<int>& primary_ids,
                                    const std::vector<int>& secondary_ids);

struct SelectionPolicy {
    Objective objective = Objective::CompletionDelay;
    double bias_exponent = 3.0;
    SecondaryWeighting secondary_weighting = SecondaryWeighting::PsiBased;
    bool recompute_modified = true;
};

/// Full per-transmission selection: reactivates exhausted receivers, runs the
/// weighted search on the primary layer, then extends with secondary vertices
/// adjacent to the whole primary clique and belonging to untargeted
/// receivers. Empty plan means no active primary vertex exists (perceived
/// completion pending confirmation).
TransmissionPlan select_transmission(IdncGraph& g, const StateFeedbackMatrix& sfm,
                                     const AttemptTracker& tracker, const ChannelParams& channels,
                                     const SelectionPolicy& policy);

double clique_weight(const std::vector<double>& weights, const std::vector<int>& vertex_ids);

}  // namespace idnc
