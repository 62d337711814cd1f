#include "dfactor/graph.hpp"

#include <algorithm>

namespace dfactor {

HostInstance::HostInstance(int n, int d, const std::vector<VertexPair>& forbidden) : n_(n), d_(d) {
    if (n < 2 || d < 1 || d >= n) throw Error(Errc::DegreeOutOfRange, "need 1 <= d < n and n >= 2");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw Error(Errc::OddProduct, "d*n must be even");
    red_adj_.assign(n, {});
    for (auto [u, v] : forbidden) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error(Errc::BadInput, "forbidden pair out of range");
        if (u == v) throw Error(Errc::BadInput, "forbidden pair is a loop");
        uint64_t k = pair_key(u, v);
        if (!red_set_.insert(k).second) {
            ++duplicate_warnings_;
            continue;
        }
        red_keys_.push_back(k);
        red_adj_[u].push_back(v);
        red_adj_[v].push_back(u);
    }
    std::sort(red_keys_.begin(), red_keys_.end());
    for (auto& a : red_adj_) std::sort(a.begin(), a.end());
    delta_ = 0;
    for (int v = 0; v < n; ++v) delta_ = std::max(delta_, static_cast<int>(red_adj_[v].size()));
    regular_complement_ = true;
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(red_adj_[v].size()) != delta_) {
            regular_complement_ = false;
            break;
        }
    }
}

Rational HostInstance::expected_red_edges() const {
    return Rational(BigInt(m_red_total()) * BigInt(d_), BigInt(n_ - 1));
}

HostInstance load_instance(int n, int d, const std::vector<VertexPair>& forbidden) {
    return HostInstance(n, d, forbidden);
}

ColoredState::ColoredState(const HostInstance& inst, const std::vector<VertexPair>& edges)
    : inst_(&inst) {
    adj_.assign(inst.n(), {});
    for (auto [u, v] : edges) {
        if (u == v) throw Error(Errc::BadInput, "loop edge");
        if (has_edge(u, v)) throw Error(Errc::EdgePresent, "duplicate edge");
        insert_edge(u, v);
    }
}

void ColoredState::insert_edge(Vertex u, Vertex v) {
    uint64_t k = pair_key(u, v);
    edge_set_.insert(k);
    edge_pos_[k] = edge_list_.size();
    edge_list_.push_back(k);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    if (inst_->is_red(u, v)) {
        red_pos_[k] = red_list_.size();
        red_list_.push_back(k);
    }
}

void ColoredState::erase_edge(Vertex u, Vertex v) {
    uint64_t k = pair_key(u, v);
    edge_set_.erase(k);
    size_t pos = edge_pos_.at(k);
    uint64_t last = edge_list_.back();
    edge_list_[pos] = last;
    edge_pos_[last] = pos;
    edge_list_.pop_back();
    edge_pos_.erase(k);
    auto drop = [](std::vector<Vertex>& a, Vertex x) {
        a.erase(std::find(a.begin(), a.end(), x));
    };
    drop(adj_[u], v);
    drop(adj_[v], u);
    if (inst_->is_red(u, v)) {
        size_t rpos = red_pos_.at(k);
        uint64_t rlast = red_list_.back();
        red_list_[rpos] = rlast;
        red_pos_[rlast] = rpos;
        red_list_.pop_back();
        red_pos_.erase(k);
    }
}

int ColoredState::red_count() const {
    int c = 0;
    for (uint64_t k : edge_list_) {
        auto [u, v] = key_pair(k);
        if (inst_->is_red(u, v)) ++c;
    }
    return c;
}

bool ColoredState::is_d_factor() const {
    for (int v = 0; v < n(); ++v) {
        if (degree(v) != d()) return false;
    }
    return red_list_.empty();
}

void ColoredState::toggle_set(const std::vector<VertexPair>& remove,
                              const std::vector<VertexPair>& add, bool from_switching) {
    for (auto [u, v] : remove) {
        if (!has_edge(u, v)) throw Error(Errc::EdgeMissing, "toggle_set: edge to remove is absent");
    }
    for (size_t i = 0; i < add.size(); ++i) {
        for (size_t j = i + 1; j < add.size(); ++j) {
            if (pair_key(add[i].first, add[i].second) == pair_key(add[j].first, add[j].second))
                throw Error(Errc::EdgePresent, "toggle_set: duplicate pair in add set");
        }
    }
    for (auto [u, v] : remove) erase_edge(u, v);
    for (auto [u, v] : add) {
        if (u == v || has_edge(u, v)) {
            throw Error(Errc::EdgePresent, "toggle_set: edge to add already present");
        }
        insert_edge(u, v);
    }
    if (from_switching) {
        for (auto [u, v] : remove) {
            if (degree(u) != d() || degree(v) != d())
                throw Error(Errc::DegreeBroken, "switching broke a vertex degree");
        }
        for (auto [u, v] : add) {
            if (degree(u) != d() || degree(v) != d())
                throw Error(Errc::DegreeBroken, "switching broke a vertex degree");
        }
    }
}

std::vector<uint64_t> ColoredState::canonical_edges() const {
    std::vector<uint64_t> keys = edge_list_;
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace dfactor
