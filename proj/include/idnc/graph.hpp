// Two-layer IDNC conflict graph. A vertex (i, j) exists for every packet j
// the sender perceives receiver i to lack; edges follow the C1 (same lost
// packet) and C2 (mutual Has) rules. Hidden vertices stay in the adjacency
// structure and only lose selection eligibility.
#pragma once

#include <bit>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "idnc/sfm.hpp"
#include "idnc/types.hpp"

namespace idnc {

struct Vertex {
    ReceiverId receiver = 0;
    PacketId packet = 0;
    bool primary = false;  // packet is in the receiver's Wants set
    bool hidden = false;   // estimated received; not considered for selection

    bool operator==(const Vertex&) const = default;
};

/// Fixed-capacity bitset over vertex indices.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int size) : size_(size), words_((size + 63) / 64, 0) {}

    int capacity() const { return size_; }
    bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool any() const;
    int count() const;
    void intersect(std::span<const std::uint64_t> row);
    std::span<const std::uint64_t> words() const { return words_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                fn(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

class IdncGraph {
public:
    IdncGraph() = default;

    int size() const { return static_cast<int>(vertices_.size()); }
    const Vertex& vertex(int v) const { return vertices_[v]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    /// Index of vertex (i, j), or -1 when receiver i is not perceived to lack j.
    int vertex_index(ReceiverId i, PacketId j) const {
        return index_[static_cast<std::size_t>(i) * packets_ + j];
    }

    bool adjacent(int a, int b) const {
        return (adj_[static_cast<std::size_t>(a) * words_ + (b >> 6)] >> (b & 63)) & 1;
    }
    std::span<const std::uint64_t> adjacency_row(int v) const {
        return {adj_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
    }
    /// A(v) restricted to `within`, as weights summed by the caller.
    int degree_within(int v, const VertexSet& within) const;

    void set_hidden(int v, bool hidden) { vertices_[v].hidden = hidden; }
    int receivers() const { return receivers_; }
    int packets() const { return packets_; }
    int edge_count() const;

    friend IdncGraph build_graph(const StateFeedbackMatrix&,
                                 const std::function<bool(ReceiverId, PacketId)>&);

private:
    int receivers_ = 0;
    int packets_ = 0;
    int words_ = 0;
    std::vector<Vertex> vertices_;      // ordered by (receiver, packet)
    std::vector<std::uint64_t> adj_;    // size() x words_
    std::vector<int> index_;            // M x N -> vertex index or -1
};

/// Builds the graph from the perceived SFM. `include_uncertain` is consulted
/// for uncertain entries only; returning false marks that vertex hidden.
IdncGraph build_graph(const StateFeedbackMatrix& sfm,
                      const std::function<bool(ReceiverId, PacketId)>& include_uncertain);
IdncGraph build_graph(const StateFeedbackMatrix& sfm);  // keep every vertex active

/// True iff all pairs in `vertex_ids` are adjacent. Throws std::out_of_range
/// on an unknown vertex id.
bool is_clique(const IdncGraph& g, std::span<const int> vertex_ids);

enum class DecodeEffect { NonInnovative, InstantlyDecodable, NonInstantlyDecodable };

struct DecodeResult {
    DecodeEffect effect = DecodeEffect::NonInnovative;
    PacketId packet = -1;  // the decodable source packet, when instantly decodable
};

/// Classifies a coded XOR set against a receiver's true reception state.
/// Throws std::invalid_argument on an empty coded set.
DecodeResult decode_effect(std::span<const PacketId> coded, const ReceiverTrueState& state);

/// Brings all of the receiver's hidden vertices back as active when it has no
/// active primary vertex left but hidden primary ones remain. Returns true if
/// anything was reactivated.
bool reactivate_if_exhausted(IdncGraph& g, ReceiverId receiver);

/// DOT dump for manual inspection (debug flag in the CLI).
std::string to_dot(const IdncGraph& g);

}  // namespace idnc
