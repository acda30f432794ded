#include "idnc/graph.hpp"

#include <bit>
#include <sstream>

namespace idnc {

bool VertexSet::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

int VertexSet::count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

void VertexSet::intersect(std::span<const std::uint64_t> row) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= row[i];
}

int IdncGraph::degree_within(int v, const VertexSet& within) const {
    const auto row = adjacency_row(v);
    const auto w = within.words();
    int c = 0;
    for (std::size_t k = 0; k < w.size(); ++k) c += std::popcount(row[k] & w[k]);
    return c;
}

int IdncGraph::edge_count() const {
    int total = 0;
    for (int v = 0; v < size(); ++v) {
        const auto row = adjacency_row(v);
        for (auto w : row) total += std::popcount(w);
    }
    return total / 2;
}

IdncGraph build_graph(const StateFeedbackMatrix& sfm,
                      const std::function<bool(ReceiverId, PacketId)>& include_uncertain) {
    IdncGraph g;
    g.receivers_ = sfm.receivers();
    g.packets_ = sfm.packets();
    g.index_.assign(static_cast<std::size_t>(g.receivers_) * g.packets_, -1);

    for (ReceiverId i = 0; i < g.receivers_; ++i) {
        for (PacketId j = 0; j < g.packets_; ++j) {
            const ReceptionStatus s = sfm.at(i, j);
            if (!in_lacks(s)) continue;
            Vertex v;
            v.receiver = i;
            v.packet = j;
            v.primary = is_wanted_lacking(s);
            v.hidden = is_uncertain(s) && !include_uncertain(i, j);
            g.index_[static_cast<std::size_t>(i) * g.packets_ + j] =
                static_cast<int>(g.vertices_.size());
            g.vertices_.push_back(v);
        }
    }

    const int n = g.size();
    g.words_ = (n + 63) / 64;
    g.adj_.assign(static_cast<std::size_t>(n) * g.words_, 0);
    for (int a = 0; a < n; ++a) {
        const Vertex& va = g.vertices_[a];
        for (int b = a + 1; b < n; ++b) {
            const Vertex& vb = g.vertices_[b];
            if (va.receiver == vb.receiver) continue;
            const bool c1 = va.packet == vb.packet;
            const bool c2 = sfm.at(vb.receiver, va.packet) == ReceptionStatus::Has &&
                            sfm.at(va.receiver, vb.packet) == ReceptionStatus::Has;
            if (c1 || c2) {
                g.adj_[static_cast<std::size_t>(a) * g.words_ + (b >> 6)] |=
                    std::uint64_t{1} << (b & 63);
                g.adj_[static_cast<std::size_t>(b) * g.words_ + (a >> 6)] |=
                    std::uint64_t{1} << (a & 63);
            }
        }
    }
    return g;
}

IdncGraph build_graph(const StateFeedbackMatrix& sfm) {
    return build_graph(sfm, [](ReceiverId, PacketId) { return true; });
}

bool is_clique(const IdncGraph& g, std::span<const int> vertex_ids) {
    for (int v : vertex_ids)
        if (v < 0 || v >= g.size()) throw std::out_of_range("unknown vertex id");
    for (std::size_t a = 0; a < vertex_ids.size(); ++a)
        for (std::size_t b = a + 1; b < vertex_ids.size(); ++b)
            if (!g.adjacent(vertex_ids[a], vertex_ids[b])) return false;
    return true;
}

DecodeResult decode_effect(std::span<const PacketId> coded, const ReceiverTrueState& state) {
    if (coded.empty()) throw std::invalid_argument("empty coded packet");
    int missing = 0;
    PacketId candidate = -1;
    for (PacketId j : coded) {
        if (!state.holds[j]) {
            ++missing;
            candidate = j;
        }
    }
    if (missing == 0) return {DecodeEffect::NonInnovative, -1};
    if (missing == 1) return {DecodeEffect::InstantlyDecodable, candidate};
    return {DecodeEffect::NonInstantlyDecodable, -1};
}

bool reactivate_if_exhausted(IdncGraph& g, ReceiverId receiver) {
    int active_primary = 0;
    int hidden_primary = 0;
    for (const Vertex& v : g.vertices()) {
        if (v.receiver != receiver || !v.primary) continue;
        if (v.hidden)
            ++hidden_primary;
        else
            ++active_primary;
    }
    if (active_primary > 0 || hidden_primary == 0) return false;
    for (int v = 0; v < g.size(); ++v)
        if (g.vertex(v).receiver == receiver) g.set_hidden(v, false);
    return true;
}

std::string to_dot(const IdncGraph& g) {
    std::ostringstream os;
    os << "graph idnc {\n";
    for (int v = 0; v < g.size(); ++v) {
        const Vertex& vx = g.vertex(v);
        os << "  v" << v << " [label=\"" << vx.receiver << ":" << vx.packet << "\""
           << (vx.primary ? ", shape=circle" : ", shape=box")
           << (vx.hidden ? ", style=dashed" : "") << "];\n";
    }
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b)
            if (g.adjacent(a, b)) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace idnc
