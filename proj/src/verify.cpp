#include "idnc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "idnc/belief.hpp"
#include "idnc/experiment.hpp"
#include "idnc/graph.hpp"
#include "idnc/rng.hpp"
#include "idnc/simulator.hpp"

namespace idnc::verify {

namespace {

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

CheckResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

CheckResult ok(std::string name, std::string detail) {
    return {std::move(name), true, std::move(detail)};
}

}  // namespace

Scales Scales::quick() {
    Scales s;
    s.ml_instances = 300;
    s.decoding_instances = 400;
    s.equivalence_instances = 120;
    s.graph_instances = 2000;
    s.sanity_trials = 20000;
    s.trajectory_checks = 20;
    s.ordering_trials = 200;
    return s;
}

double event_level_loss_probability(double p, double q, int theta) {
    if (theta < 1 || theta > 8) throw std::invalid_argument("theta out of [1,8]");
    // outcome 0: forward loss; 1: received, feedback heard; 2: received,
    // feedback erased
    const double weight[3] = {p, (1.0 - p) * (1.0 - q), (1.0 - p) * q};
    long combos = 1;
    for (int k = 0; k < theta; ++k) combos *= 3;
    double unheard_mass = 0.0;
    double lost_mass = 0.0;
    for (long code = 0; code < combos; ++code) {
        long rest = code;
        double prob = 1.0;
        bool any_heard = false;
        bool any_received = false;
        for (int k = 0; k < theta; ++k) {
            const int outcome = static_cast<int>(rest % 3);
            rest /= 3;
            prob *= weight[outcome];
            any_heard |= outcome == 1;
            any_received |= outcome != 0;
        }
        if (any_heard) continue;  // the sender would have resolved the entry
        unheard_mass += prob;
        if (!any_received) lost_mass += prob;
    }
    return lost_mass / unheard_mass;
}

RandomInstance random_instance(std::mt19937_64& rng, int min_m, int max_m, int min_n, int max_n,
                               int max_uncertain, int max_theta) {
    RandomInstance inst;
    const int m = min_m + static_cast<int>(rand_below(rng, max_m - min_m + 1));
    const int n = min_n + static_cast<int>(rand_below(rng, max_n - min_n + 1));
    inst.sfm = StateFeedbackMatrix(m, n);
    inst.tracker = AttemptTracker(m, n);

    for (ReceiverId i = 0; i < m; ++i) {
        const bool fully_uncertain_receiver = rand_u01(rng) < 0.25;
        for (PacketId j = 0; j < n; ++j) {
            const bool wanted = rand_u01(rng) < 0.5;
            const double u = rand_u01(rng);
            ReceptionStatus s;
            if (wanted) {
                if (u < 0.45) s = ReceptionStatus::Has;
                else if (u < 0.75 && !fully_uncertain_receiver) s = ReceptionStatus::Wants;
                else s = ReceptionStatus::UncertainWanted;
            } else {
                if (u < 0.55) s = ReceptionStatus::Has;
                else if (u < 0.85) s = ReceptionStatus::LacksUndesired;
                else s = ReceptionStatus::UncertainUnwanted;
            }
            inst.sfm.set(i, j, s);
            if (is_uncertain(s))
                inst.tracker.mutable_at(i, j) = 1 + static_cast<int>(rand_below(rng, max_theta));
        }
    }

    // demote excess uncertain entries so oracles stay within their caps
    int uncertain = 0;
    for (ReceiverId i = 0; i < m; ++i)
        for (PacketId j = 0; j < n; ++j)
            if (is_uncertain(inst.sfm.at(i, j)) && ++uncertain > max_uncertain) {
                inst.sfm.set(i, j, inst.sfm.at(i, j) == ReceptionStatus::UncertainWanted
                                       ? ReceptionStatus::Wants
                                       : ReceptionStatus::LacksUndesired);
                inst.tracker.mutable_at(i, j) = 0;
            }

    bool any_primary = false;
    for (ReceiverId i = 0; i < m && !any_primary; ++i) any_primary = !inst.sfm.wants_empty(i);
    if (!any_primary) {
        const auto i = static_cast<ReceiverId>(rand_below(rng, m));
        const auto j = static_cast<PacketId>(rand_below(rng, n));
        inst.sfm.set(i, j, ReceptionStatus::Wants);
        inst.tracker.mutable_at(i, j) = 0;
    }

    inst.channels.reciprocal = rand_u01(rng) < 0.5;
    inst.channels.p.resize(m);
    inst.channels.q.resize(m);
    for (ReceiverId i = 0; i < m; ++i) {
        inst.channels.p[i] = 0.1 + 0.7 * rand_u01(rng);
        inst.channels.q[i] = inst.channels.reciprocal
                                 ? inst.channels.p[i]
                                 : inst.channels.p[i] * (0.05 + 0.9 * rand_u01(rng));
    }
    return inst;
}

TransmissionPlan random_plan(const RandomInstance& inst, std::mt19937_64& rng) {
    const IdncGraph g = build_graph(inst.sfm);
    std::vector<double> weights(g.size());
    for (auto& w : weights) w = 0.1 + rand_u01(rng);

    VertexSet primary(g.size());
    for (int v = 0; v < g.size(); ++v)
        if (g.vertex(v).primary) primary.set(v);
    const auto kappa_rho = weighted_vertex_search(g, weights, primary);
    if (kappa_rho.empty()) return {};

    std::vector<int> kappa_sigma;
    if (rand_u01(rng) < 0.5) {
        std::vector<std::uint8_t> targeted(g.receivers(), 0);
        for (int v : kappa_rho) targeted[g.vertex(v).receiver] = 1;
        VertexSet secondary(g.size());
        for (int v = 0; v < g.size(); ++v)
            if (!g.vertex(v).primary && !targeted[g.vertex(v).receiver]) secondary.set(v);
        for (int v : kappa_rho) secondary.intersect(g.adjacency_row(v));
        kappa_sigma = weighted_vertex_search(g, weights, secondary);
    }
    return plan_from_vertices(g, kappa_rho, kappa_sigma);
}

bool untargeted_instant_decode_possible(const StateFeedbackMatrix& sfm,
                                        const TransmissionPlan& plan) {
    const int n = sfm.packets();
    for (ReceiverId i = 0; i < sfm.receivers(); ++i) {
        if (sfm.wants_empty(i)) continue;
        const PlanTarget* t = plan.target_for(i);
        if (t != nullptr && t->primary) continue;  // exact by clique adjacency
        const auto uncertain = sfm.uncertain_set(i);
        const int k = static_cast<int>(uncertain.size());
        std::vector<std::uint8_t> holds(n, 0);
        std::vector<std::uint8_t> wanted(n, 0);
        for (PacketId j = 0; j < n; ++j) {
            holds[j] = sfm.at(i, j) == ReceptionStatus::Has ? 1 : 0;
            wanted[j] = is_wanted_lacking(sfm.at(i, j)) ? 1 : 0;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            for (int e = 0; e < k; ++e) holds[uncertain[e]] = (mask >> e) & 1 ? 1 : 0;
            int missing = 0;
            PacketId last = -1;
            for (PacketId j : plan.coded)
                if (!holds[j]) {
                    ++missing;
                    last = j;
                }
            if (missing == 1 && wanted[last]) return true;
        }
    }
    return false;
}

CheckResult belief_correctness() {
    const char* name = "belief closed form vs event-level brute force";
    double worst = 0.0;
    for (int pi = 1; pi <= 9; ++pi) {
        for (int qi = 1; qi <= 9; ++qi) {
            const double p = pi / 10.0;
            const double q = qi / 10.0;
            for (int theta = 1; theta <= 4; ++theta) {
                const double brute = event_level_loss_probability(p, q, theta);
                const double diff = std::abs(p_loss(p, q, theta) - brute);
                worst = std::max(worst, diff);
                if (diff > 1e-12)
                    return fail(name, format("p=%.1f q=%.1f theta=%d diff=%.3e", p, q, theta, diff));
            }
        }
    }
    for (int pi = 1; pi <= 9; ++pi) {
        for (int theta = 1; theta <= 4; ++theta) {
            const double p = pi / 10.0;
            const double diff = std::abs(p_loss_reciprocal(p, theta) - p_loss(p, p, theta));
            if (diff > 1e-15)
                return fail(name, format("reciprocal p=%.1f theta=%d diff=%.3e", p, theta, diff));
        }
    }
    return ok(name, format("9x9 grid x theta 1..4, worst diff %.3e", worst));
}

CheckResult ml_factorization(int instances, std::uint64_t seed) {
    const char* name = "ML joint argmax vs per-entry threshold decisions";
    std::mt19937_64 rng(splitmix64(seed ^ 0xA1));
    int done = 0;
    int attempts = 0;
    while (done < instances) {
        if (++attempts > instances * 200) return fail(name, "instance generation stalled");
        const RandomInstance inst = random_instance(rng, 1, 4, 1, 4, 10, 4);
        const auto entries = uncertain_entries(inst.sfm);
        if (entries.empty()) continue;
        bool near_tie = false;
        std::uint64_t expected = 0;
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto [i, j] = entries[e];
            const double pl = p_loss(inst.channels.p[i], inst.channels.q[i], inst.tracker.at(i, j));
            if (std::abs(pl - 0.5) < 1e-9) {
                near_tie = true;
                break;
            }
            if (ml_entry_decision(inst.channels.p[i], inst.channels.q[i], inst.tracker.at(i, j)) ==
                MlDecision::Lost)
                expected |= std::uint64_t{1} << e;
        }
        if (near_tie) continue;
        const MlRealization oracle = ml_state_oracle(inst.sfm, inst.tracker, inst.channels, 10);
        if (oracle.lost_mask != expected)
            return fail(name, format("instance %d: oracle mask %llx != per-entry %llx", done,
                                     static_cast<unsigned long long>(oracle.lost_mask),
                                     static_cast<unsigned long long>(expected)));
        ++done;
    }
    return ok(name, format("%d instances, exact agreement", done));
}

CheckResult threshold_rules() {
    const char* name = "threshold rules reproduce sign of P_loss - 0.5";
    for (int pi = 1; pi <= 9; ++pi) {
        for (int qi = 1; qi <= 9; ++qi) {
            const double p = pi / 10.0;
            const double q = qi / 10.0;
            for (int theta = 1; theta <= 4; ++theta) {
                const bool lost_by_probability = p_loss(p, q, theta) >= 0.5;
                const bool lost_by_rule = ml_entry_decision(p, q, theta) == MlDecision::Lost;
                if (lost_by_probability != lost_by_rule)
                    return fail(name, format("p=%.1f q=%.1f theta=%d disagree", p, q, theta));
            }
            // monotone permanence up to theta = 64
            bool received_seen = false;
            for (int theta = 1; theta <= 64; ++theta) {
                const bool received = ml_entry_decision(p, q, theta) == MlDecision::Received;
                if (received_seen && !received)
                    return fail(name, format("p=%.1f q=%.1f non-monotone at theta=%d", p, q, theta));
                received_seen |= received;
            }
        }
        // reciprocal one-attempt rule holds for every p
        if (ml_entry_decision(pi / 10.0, pi / 10.0, 1) != MlDecision::Lost)
            return fail(name, format("reciprocal p=%.1f theta=1 not Lost", pi / 10.0));
    }
    return ok(name, "grid agreement, permanence to theta=64, reciprocal n=1 rule");
}

namespace {

enum CoverageClass { kNuPartial, kNuFully, kTauNew, kTauUncPartial, kTauUncFully, kClassCount };

void record_coverage(const ReceiverClassification& c, bool counts[kClassCount]) {
    auto contains = [](const std::vector<ReceiverId>& v, ReceiverId i) {
        return std::find(v.begin(), v.end(), i) != v.end();
    };
    for (ReceiverId i : c.outstanding) {
        const bool fully = contains(c.fully_uncertain, i);
        if (contains(c.untargeted, i)) counts[fully ? kNuFully : kNuPartial] = true;
        if (contains(c.targeted_new, i)) counts[kTauNew] = true;
        if (contains(c.targeted_uncertain, i)) counts[fully ? kTauUncFully : kTauUncPartial] = true;
    }
}

}  // namespace

CheckResult decoding_closed_form(int instances, std::uint64_t seed) {
    const char* name = "decoding-delay closed form vs exhaustive oracle";
    std::mt19937_64 rng(splitmix64(seed ^ 0xB2));
    bool covered[kClassCount] = {};
    double worst = 0.0;
    int done = 0;
    int attempts = 0;
    while (done < instances || !std::all_of(covered, covered + kClassCount, [](bool b) { return b; })) {
        if (++attempts > instances * 300)
            return fail(name, format("generation stalled at %d instances", done));
        const RandomInstance inst = random_instance(rng, 2, 6, 3, 6, 12, 3);
        const TransmissionPlan plan = random_plan(inst, rng);
        if (plan.empty()) continue;
        if (untargeted_instant_decode_possible(inst.sfm, plan)) continue;
        const ReceiverClassification c = classify_receivers(inst.sfm, inst.tracker, plan);
        const double closed = expected_decoding_delay(inst.sfm, inst.tracker, inst.channels, plan);
        const double oracle =
            expected_decoding_delay_oracle(inst.sfm, inst.tracker, inst.channels, plan);
        const double diff = std::abs(closed - oracle);
        worst = std::max(worst, diff);
        if (diff > 1e-12)
            return fail(name, format("instance %d: closed %.17g oracle %.17g", done, closed, oracle));
        record_coverage(c, covered);
        ++done;
    }
    return ok(name, format("%d instances, all 5 receiver classes covered, worst diff %.3e", done,
                           worst));
}

CheckResult objective_equivalence(int instances, std::uint64_t seed) {
    const char* name = "max-weight clique attains minimum expected decoding delay";
    std::mt19937_64 rng(splitmix64(seed ^ 0xC3));
    int done = 0;
    int attempts = 0;
    while (done < instances) {
        if (++attempts > instances * 300) return fail(name, "instance generation stalled");
        const RandomInstance inst = random_instance(rng, 2, 4, 3, 5, 8, 3);
        const IdncGraph g = build_graph(inst.sfm);
        if (g.size() == 0 || g.size() > 14) continue;

        const VertexWeighting w = make_decoding_weights(g, inst.sfm, inst.tracker, inst.channels,
                                                        SecondaryWeighting::ZeroWeight, 3.0);
        const auto best = exact_max_weight_clique(g, w.objective_weight);
        if (best.empty()) continue;

        auto plan_of = [&](const std::vector<int>& ids) {
            std::vector<int> primary, secondary;
            for (int v : ids) (g.vertex(v).primary ? primary : secondary).push_back(v);
            return plan_from_vertices(g, primary, secondary);
        };
        const double best_delay =
            expected_decoding_delay(inst.sfm, inst.tracker, inst.channels, plan_of(best));
        double min_delay = std::numeric_limits<double>::infinity();
        enumerate_cliques(g, [&](const std::vector<int>& clique) {
            min_delay = std::min(min_delay, expected_decoding_delay(inst.sfm, inst.tracker,
                                                                    inst.channels, plan_of(clique)));
        });
        if (!(best_delay <= min_delay))
            return fail(name, format("instance %d: best %.17g > min %.17g", done, best_delay,
                                     min_delay));
        ++done;
    }
    return ok(name, format("%d instances, argmin membership exact", done));
}

CheckResult graph_correctness(int instances, std::uint64_t seed) {
    const char* name = "graph adjacency vs brute force, plan validity";
    std::mt19937_64 rng(splitmix64(seed ^ 0xD4));
    long plans_checked = 0;
    for (int it = 0; it < instances; ++it) {
        const RandomInstance inst = random_instance(rng, 1, 8, 1, 8, 16, 3);
        const int policy_pick = static_cast<int>(rand_below(rng, 3));
        const auto include = [&](ReceiverId i, PacketId j) {
            if (policy_pick == 0) return true;
            if (policy_pick == 1) return false;
            return ml_entry_decision(inst.channels.p[i], inst.channels.q[i],
                                     inst.tracker.at(i, j)) == MlDecision::Lost;
        };
        IdncGraph g = build_graph(inst.sfm, include);

        // expected vertex set: one per perceived-lacking entry
        int expected_vertices = 0;
        for (ReceiverId i = 0; i < inst.sfm.receivers(); ++i)
            expected_vertices += static_cast<int>(inst.sfm.lacks_set(i).size());
        if (expected_vertices != g.size()) return fail(name, "vertex count mismatch");

        for (int a = 0; a < g.size(); ++a) {
            const Vertex& va = g.vertex(a);
            for (int b = 0; b < g.size(); ++b) {
                if (a == b) continue;
                const Vertex& vb = g.vertex(b);
                bool expected = false;
                if (va.receiver != vb.receiver) {
                    const bool c1 = va.packet == vb.packet;
                    const bool c2 =
                        inst.sfm.at(vb.receiver, va.packet) == ReceptionStatus::Has &&
                        inst.sfm.at(va.receiver, vb.packet) == ReceptionStatus::Has;
                    expected = c1 || c2;
                }
                if (g.adjacent(a, b) != expected)
                    return fail(name, format("adjacency mismatch at instance %d", it));
                if (va.receiver == vb.receiver && g.adjacent(a, b))
                    return fail(name, "same-receiver adjacency");
            }
        }

        SelectionPolicy policy;
        policy.objective =
            rand_u01(rng) < 0.5 ? Objective::CompletionDelay : Objective::DecodingDelay;
        const TransmissionPlan plan =
            select_transmission(g, inst.sfm, inst.tracker, inst.channels, policy);
        if (plan.empty()) continue;
        const auto ids = plan.vertex_ids();
        if (!is_clique(g, ids)) return fail(name, format("plan not a clique at instance %d", it));
        for (const PlanTarget& s : plan.targets) {
            if (s.primary) continue;
            for (const PlanTarget& r : plan.targets)
                if (r.primary && !g.adjacent(s.vertex, r.vertex))
                    return fail(name, "secondary vertex not adjacent to whole primary clique");
        }
        ++plans_checked;
    }
    return ok(name, format("%d instances, %ld plans validated", instances, plans_checked));
}

CheckResult simulation_sanity(int trials, int trajectory_checks, std::uint64_t seed) {
    const char* name = "geometric recovery mean and PF/ML trajectory equality";

    FrameConfig cfg;
    cfg.num_receivers = 1;
    cfg.num_packets = 1;
    cfg.channels.p = {0.5};
    cfg.channels.q = {0.0};
    cfg.channels.reciprocal = false;
    cfg.demand = DemandProfile::from_masks({{1}});
    cfg.policy = PolicyKind::PF;

    double sum = 0.0;
    double sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const FrameMetrics m = run_frame(cfg, derive_seed(seed, 0, 0, t));
        sum += m.completion_delay;
        sum_sq += static_cast<double>(m.completion_delay) * m.completion_delay;
    }
    const double mean = sum / trials;
    const double variance = (sum_sq - trials * mean * mean) / (trials - 1);
    const double stderr_mean = std::sqrt(variance / trials);
    // initial loss w.p. 1/2 followed by Geometric(1/2) recovery: E = 1
    if (std::abs(mean - 1.0) > 3.0 * stderr_mean)
        return fail(name, format("mean %.5f vs 1.0, 3se = %.5f", mean, 3.0 * stderr_mean));

    std::mt19937_64 rng(splitmix64(seed ^ 0xE5));
    for (int k = 0; k < trajectory_checks; ++k) {
        const int m = 2 + static_cast<int>(rand_below(rng, 4));
        const int n = 2 + static_cast<int>(rand_below(rng, 5));
        std::vector<std::vector<std::uint8_t>> wants(m, std::vector<std::uint8_t>(n, 0));
        for (auto& row : wants)
            for (auto& w : row) w = rand_u01(rng) < 0.6 ? 1 : 0;
        FrameConfig base;
        base.num_receivers = m;
        base.num_packets = n;
        base.channels.reciprocal = false;
        base.channels.p.resize(m);
        base.channels.q.assign(m, 0.0);
        for (auto& p : base.channels.p) p = 0.1 + 0.5 * rand_u01(rng);
        base.demand = DemandProfile::from_masks(wants);
        base.check_invariants = true;

        const std::uint64_t frame_seed = rng();
        FrameConfig pf = base;
        pf.policy = PolicyKind::PF;
        FrameConfig ml = base;
        ml.policy = PolicyKind::ML;
        std::vector<TraceEvent> trace_pf, trace_ml;
        const FrameMetrics a = run_frame(pf, frame_seed, &trace_pf);
        const FrameMetrics b = run_frame(ml, frame_seed, &trace_ml);
        if (!(a == b) || !(trace_pf == trace_ml))
            return fail(name, format("PF/ML divergence at check %d (M=%d N=%d)", k, m, n));
    }
    return ok(name, format("mean %.4f within 3se of 1.0 over %d runs; %d trajectory pairs equal",
                           mean, trials, trajectory_checks));
}

namespace {

const ExperimentRow& row_for(const std::vector<ExperimentRow>& rows, PolicyKind p) {
    for (const auto& r : rows)
        if (r.policy == p) return r;
    throw std::logic_error("policy row missing");
}

}  // namespace

CheckResult completion_ordering(int trials, std::uint64_t seed, int threads) {
    const char* name = "completion-delay policy ordering (PF <= ML <= FVE/NVE)";
    SweepConfig cfg;
    cfg.axis = SweepAxis::P;
    cfg.values = {0.25};
    cfg.num_receivers = 20;
    cfg.num_packets = 15;
    cfg.mean_mu = 0.5;
    cfg.reciprocal = true;
    cfg.bias_exponent = 3.0;
    cfg.policies = {PolicyKind::PF, PolicyKind::ML, PolicyKind::FVE, PolicyKind::NVE};
    cfg.trials = trials;
    cfg.master_seed = seed;

    const auto rows = run_experiment(cfg, threads);
    const auto& pf = row_for(rows, PolicyKind::PF);
    const auto& ml = row_for(rows, PolicyKind::ML);
    const auto& fve = row_for(rows, PolicyKind::FVE);
    const auto& nve = row_for(rows, PolicyKind::NVE);

    const bool fve_is_min = fve.mean_completion_delay <= nve.mean_completion_delay;
    const double baseline =
        fve_is_min ? fve.mean_completion_delay : nve.mean_completion_delay;
    const double halfwidth = fve_is_min ? fve.ci95_completion : nve.ci95_completion;
    const double degradation =
        (ml.mean_completion_delay - pf.mean_completion_delay) / pf.mean_completion_delay;

    const std::string detail = format(
        "PF %.3f  ML %.3f  FVE %.3f  NVE %.3f  (hw %.3f, ML/PF degradation %.1f%%)",
        pf.mean_completion_delay, ml.mean_completion_delay, fve.mean_completion_delay,
        nve.mean_completion_delay, halfwidth, 100.0 * degradation);
    if (pf.mean_completion_delay > ml.mean_completion_delay) return fail(name, "PF > ML: " + detail);
    if (ml.mean_completion_delay > baseline + halfwidth)
        return fail(name, "ML above baselines: " + detail);
    if (degradation > 0.30) return fail(name, "ML degradation over 30%: " + detail);
    return ok(name, detail);
}

CheckResult decoding_ordering(int trials, std::uint64_t seed, int threads) {
    const char* name = "decoding-delay policy ordering (WVS_DD <= FVE/NVE)";
    SweepConfig cfg;
    cfg.axis = SweepAxis::P;
    cfg.values = {0.25};
    cfg.num_receivers = 20;
    cfg.num_packets = 15;
    cfg.mean_mu = 0.8;
    cfg.reciprocal = true;
    cfg.bias_exponent = 3.0;
    cfg.policies = {PolicyKind::WVS_DD, PolicyKind::FVE, PolicyKind::NVE};
    cfg.trials = trials;
    cfg.master_seed = seed;

    const auto rows = run_experiment(cfg, threads);
    const auto& wvs = row_for(rows, PolicyKind::WVS_DD);
    const auto& fve = row_for(rows, PolicyKind::FVE);
    const auto& nve = row_for(rows, PolicyKind::NVE);

    const bool fve_is_min = fve.mean_decoding_delay <= nve.mean_decoding_delay;
    const double baseline = fve_is_min ? fve.mean_decoding_delay : nve.mean_decoding_delay;
    const double halfwidth = fve_is_min ? fve.ci95_decoding : nve.ci95_decoding;

    const std::string detail =
        format("WVS_DD %.4f  FVE %.4f  NVE %.4f  (hw %.4f)", wvs.mean_decoding_delay,
               fve.mean_decoding_delay, nve.mean_decoding_delay, halfwidth);
    if (wvs.mean_decoding_delay > baseline + halfwidth)
        return fail(name, "WVS_DD above baselines: " + detail);
    return ok(name, detail);
}

CheckResult determinism(std::uint64_t seed) {
    const char* name = "byte-identical results across reruns and thread counts";
    SweepConfig cfg;
    cfg.axis = SweepAxis::P;
    cfg.values = {0.2, 0.4};
    cfg.num_receivers = 6;
    cfg.num_packets = 6;
    cfg.mean_mu = 0.6;
    cfg.reciprocal = true;
    cfg.policies = {PolicyKind::ML, PolicyKind::WVS_DD};
    cfg.trials = 8;
    cfg.master_seed = seed;

    const std::string first = rows_to_csv(run_experiment(cfg, 1));
    const std::string second = rows_to_csv(run_experiment(cfg, 1));
    const std::string threaded = rows_to_csv(run_experiment(cfg, 4));
    if (first != second) return fail(name, "rerun differs");
    if (first != threaded) return fail(name, "thread count changes output");
    return ok(name, "2 reruns + 4-thread run byte-identical");
}

std::vector<CheckResult> run_all(const Scales& s, int threads) {
    std::vector<CheckResult> out;
    out.push_back(belief_correctness());
    out.push_back(ml_factorization(s.ml_instances, s.seed));
    out.push_back(threshold_rules());
    out.push_back(decoding_closed_form(s.decoding_instances, s.seed));
    out.push_back(objective_equivalence(s.equivalence_instances, s.seed));
    out.push_back(graph_correctness(s.graph_instances, s.seed));
    out.push_back(simulation_sanity(s.sanity_trials, s.trajectory_checks, s.seed));
    out.push_back(completion_ordering(s.ordering_trials, s.seed, threads));
    out.push_back(decoding_ordering(s.ordering_trials, s.seed, threads));
    out.push_back(determinism(s.seed));
    return out;
}

}  // namespace idnc::verify
