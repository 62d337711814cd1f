#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dfactor/errors.hpp"
#include "dfactor/rational.hpp"

namespace dfactor {

using Vertex = int32_t;
using VertexPair = std::pair<Vertex, Vertex>;

// canonical (min,max) pair packed into one key
inline uint64_t pair_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}
inline VertexPair key_pair(uint64_t k) {
    return {static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffu)};
}

enum class PairColor { Black, Red };

// The problem: n, d, and the red (forbidden) pairs of K_n. Immutable once
// built; shared read-only by every state and thread.
class HostInstance {
public:
    HostInstance(int n, int d, const std::vector<VertexPair>& forbidden);

    int n() const { return n_; }
    int d() const { return d_; }
    int delta() const { return delta_; }
    long long m_red_total() const { return static_cast<long long>(red_keys_.size()); }
    bool regular_complement() const { return regular_complement_; }
    int duplicate_warnings() const { return duplicate_warnings_; }

    bool is_red(Vertex u, Vertex v) const {
        return u != v && red_set_.count(pair_key(u, v)) > 0;
    }
    PairColor color(Vertex u, Vertex v) const {
        return is_red(u, v) ? PairColor::Red : PairColor::Black;
    }

    // red K_n neighbours of v, sorted
    const std::vector<Vertex>& red_neighbors(Vertex v) const { return red_adj_[v]; }
    int red_degree(Vertex v) const { return static_cast<int>(red_adj_[v].size()); }
    const std::vector<uint64_t>& red_pair_keys() const { return red_keys_; }

    // Lemma: a uniformly random d-regular graph has |E(H-bar)| * d / (n-1)
    // red edges in expectation
    Rational expected_red_edges() const;

private:
    int n_, d_;
    int delta_ = 0;
    bool regular_complement_ = false;
    int duplicate_warnings_ = 0;
    std::vector<uint64_t> red_keys_;
    std::unordered_set<uint64_t> red_set_;
    std::vector<std::vector<Vertex>> red_adj_;
};

HostInstance load_instance(int n, int d, const std::vector<VertexPair>& forbidden);

// The current d-regular graph with its red-edge bookkeeping. Single-owner
// mutable; one state per sampling trajectory.
class ColoredState {
public:
    ColoredState(const HostInstance& inst, const std::vector<VertexPair>& edges);

    const HostInstance& instance() const { return *inst_; }
    int n() const { return inst_->n(); }
    int d() const { return inst_->d(); }

    bool has_edge(Vertex u, Vertex v) const {
        return u != v && edge_set_.count(pair_key(u, v)) > 0;
    }
    bool is_red_edge(Vertex u, Vertex v) const {
        return has_edge(u, v) && inst_->is_red(u, v);
    }
    // red in K_n and absent from G
    bool is_red_non_edge(Vertex u, Vertex v) const {
        return inst_->is_red(u, v) && !has_edge(u, v);
    }
    // absent from G and from H-bar: candidate for a "black non-edge" slot
    bool is_black_non_edge(Vertex u, Vertex v) const {
        return u != v && !has_edge(u, v) && !inst_->is_red(u, v);
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    // ordered edge count dn; edge list index is stable only between toggles
    const std::vector<uint64_t>& edge_keys() const { return edge_list_; }
    const std::vector<uint64_t>& red_edge_keys() const { return red_list_; }

    int stratum() const { return static_cast<int>(red_list_.size()); }
    int red_count() const;  // recount from scratch; must equal stratum()

    bool is_d_factor() const;

    void toggle_set(const std::vector<VertexPair>& remove, const std::vector<VertexPair>& add,
                    bool from_switching = false);

    // canonical sorted edge-key encoding, the labeled-graph identity
    std::vector<uint64_t> canonical_edges() const;

private:
    const HostInstance* inst_;
    std::vector<std::vector<Vertex>> adj_;
    std::unordered_set<uint64_t> edge_set_;
    std::vector<uint64_t> edge_list_;
    std::unordered_map<uint64_t, size_t> edge_pos_;
    std::vector<uint64_t> red_list_;
    std::unordered_map<uint64_t, size_t> red_pos_;

    void insert_edge(Vertex u, Vertex v);
    void erase_edge(Vertex u, Vertex v);
};

}  // namespace dfactor
