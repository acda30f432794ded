#include <random>

#include "doctest.h"
#include "idnc/graph.hpp"
#include "idnc/rng.hpp"
#include "idnc/verify.hpp"

using namespace idnc;

namespace {

// Three receivers, six packets. Receiver 0 wants packet 0 (holds 1,3,4,5),
// receiver 1 wants packet 3 (holds 0,2,4,5), receiver 2 wants packets 0 and 4.
// A maximal clique covers all three receivers with the XOR 0+3.
StateFeedbackMatrix example_sfm() {
    StateFeedbackMatrix sfm(3, 6);
    const ReceptionStatus H = ReceptionStatus::Has;
    const ReceptionStatus W = ReceptionStatus::Wants;
    const ReceptionStatus L = ReceptionStatus::LacksUndesired;
    const ReceptionStatus grid[3][6] = {
        {W, H, L, H, H, H},
        {H, L, H, W, H, H},
        {W, H, H, H, W, H},
    };
    for (ReceiverId i = 0; i < 3; ++i)
        for (PacketId j = 0; j < 6; ++j) sfm.set(i, j, grid[i][j]);
    return sfm;
}

}  // namespace

TEST_CASE("example SFM builds the expected two-layer graph") {
    const auto sfm = example_sfm();
    const IdncGraph g = build_graph(sfm);

    CHECK(g.size() == 6);  // sum of Lacks set sizes
    CHECK(g.edge_count() == 10);

    const int v00 = g.vertex_index(0, 0);
    const int v02 = g.vertex_index(0, 2);
    const int v11 = g.vertex_index(1, 1);
    const int v13 = g.vertex_index(1, 3);
    const int v20 = g.vertex_index(2, 0);
    const int v24 = g.vertex_index(2, 4);
    REQUIRE(v00 >= 0);
    REQUIRE(g.vertex_index(0, 1) == -1);

    CHECK(g.vertex(v00).primary);
    CHECK_FALSE(g.vertex(v02).primary);
    CHECK_FALSE(g.vertex(v11).primary);

    CHECK(g.adjacent(v00, v20));   // C1: same lost packet
    CHECK(g.adjacent(v00, v13));   // C2: mutual Has
    CHECK(g.adjacent(v13, v24));   // C2
    CHECK_FALSE(g.adjacent(v00, v24));  // packet 0 not in receiver 2's Has
    CHECK_FALSE(g.adjacent(v20, v24));  // same receiver
    CHECK_FALSE(g.adjacent(v02, v20));  // C2 fails one way

    CHECK(is_clique(g, std::vector<int>{v00, v13, v20}));
}

TEST_CASE("empty Lacks sets give an empty graph") {
    StateFeedbackMatrix sfm(2, 3);  // constructed all-Has
    const IdncGraph g = build_graph(sfm);
    CHECK(g.size() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("two receivers lacking the same packet are C1-adjacent") {
    StateFeedbackMatrix sfm(2, 2);
    sfm.set(0, 1, ReceptionStatus::Wants);
    sfm.set(1, 1, ReceptionStatus::LacksUndesired);
    const IdncGraph g = build_graph(sfm);
    CHECK(g.size() == 2);
    CHECK(g.adjacent(0, 1));
}

TEST_CASE("is_clique basics and unknown-vertex error") {
    const IdncGraph g = build_graph(example_sfm());
    CHECK(is_clique(g, std::vector<int>{g.vertex_index(0, 0)}));
    CHECK(is_clique(g, std::vector<int>{g.vertex_index(0, 0), g.vertex_index(2, 0)}));
    CHECK_FALSE(is_clique(g, std::vector<int>{g.vertex_index(2, 0), g.vertex_index(2, 4)}));
    CHECK_THROWS_AS(is_clique(g, std::vector<int>{0, 99}), std::out_of_range);
}

TEST_CASE("decode_effect classifies against the true reception set") {
    ReceiverTrueState state;
    state.holds = {0, 0, 0, 0, 1};
    state.wants = {1, 0, 0, 0, 0};
    const std::vector<PacketId> coded = {0, 4};

    const auto r = decode_effect(coded, state);
    CHECK(r.effect == DecodeEffect::InstantlyDecodable);
    CHECK(r.packet == 0);

    state.holds = {1, 0, 0, 0, 1};
    CHECK(decode_effect(coded, state).effect == DecodeEffect::NonInnovative);

    state.holds = {0, 0, 0, 0, 0};
    CHECK(decode_effect(coded, state).effect == DecodeEffect::NonInstantlyDecodable);

    CHECK_THROWS_AS(decode_effect(std::vector<PacketId>{}, state), std::invalid_argument);
}

TEST_CASE("reactivation restores a receiver whose primary layer is fully hidden") {
    StateFeedbackMatrix sfm(2, 3);
    sfm.set(0, 0, ReceptionStatus::UncertainWanted);
    sfm.set(0, 1, ReceptionStatus::UncertainWanted);
    sfm.set(0, 2, ReceptionStatus::UncertainUnwanted);
    sfm.set(1, 0, ReceptionStatus::Wants);

    IdncGraph g = build_graph(sfm, [](ReceiverId, PacketId) { return false; });
    CHECK(g.vertex(g.vertex_index(0, 0)).hidden);

    SUBCASE("two hidden primary vertices, zero active: everything comes back") {
        CHECK(reactivate_if_exhausted(g, 0));
        for (int v = 0; v < g.size(); ++v)
            if (g.vertex(v).receiver == 0) CHECK_FALSE(g.vertex(v).hidden);
    }
    SUBCASE("a receiver with an active vertex is untouched") {
        CHECK_FALSE(reactivate_if_exhausted(g, 1));
        CHECK_FALSE(g.vertex(g.vertex_index(1, 0)).hidden);
    }
    SUBCASE("a receiver with no vertices is untouched") {
        StateFeedbackMatrix all_has(2, 2);
        IdncGraph g2 = build_graph(all_has);
        CHECK_FALSE(reactivate_if_exhausted(g2, 0));
    }
}

TEST_CASE("hiding never changes adjacency") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        const auto inst = verify::random_instance(rng, 1, 6, 1, 6, 16, 3);
        const IdncGraph all = build_graph(inst.sfm);
        const IdncGraph none = build_graph(inst.sfm, [](ReceiverId, PacketId) { return false; });
        REQUIRE(all.size() == none.size());
        for (int a = 0; a < all.size(); ++a)
            for (int b = 0; b < all.size(); ++b)
                CHECK(all.adjacent(a, b) == none.adjacent(a, b));
    }
}

TEST_CASE("a clique's XOR set is instantly decodable for every inducing receiver") {
    // evaluated against the perceived state the graph was built from
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        const auto inst = verify::random_instance(rng, 2, 6, 2, 6, 12, 3);
        const auto plan = verify::random_plan(inst, rng);
        if (plan.empty()) continue;
        for (const auto& t : plan.targets) {
            ReceiverTrueState perceived;
            perceived.holds.assign(inst.sfm.packets(), 0);
            perceived.wants.assign(inst.sfm.packets(), 0);
            for (PacketId j = 0; j < inst.sfm.packets(); ++j)
                perceived.holds[j] = inst.sfm.at(t.receiver, j) == ReceptionStatus::Has ? 1 : 0;
            const auto r = decode_effect(plan.coded, perceived);
            CHECK(r.effect == DecodeEffect::InstantlyDecodable);
            CHECK(r.packet == t.packet);
        }
    }
}

TEST_CASE("DOT dump lists vertices and edges") {
    const std::string dot = to_dot(build_graph(example_sfm()));
    CHECK(dot.find("graph idnc {") == 0);
    CHECK(dot.find("label=\"0:0\"") != std::string::npos);
    CHECK(dot.find(" -- ") != std::string::npos);
}
