#include "dfactor/regular_gen.hpp"

#include <numeric>

namespace dfactor {

namespace {

// one pairing attempt; returns the edge list or empty on loop/multi-edge
bool try_pairing(int n, int d, RngStream& rng, std::vector<VertexPair>& edges) {
    const int points = n * d;
    static thread_local std::vector<int> perm;
    perm.resize(points);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = points - 1; i > 0; --i) {
        int j = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
    static thread_local std::vector<uint64_t> seen;
    seen.clear();
    edges.clear();
    edges.reserve(points / 2);
    for (int i = 0; i < points; i += 2) {
        Vertex u = perm[i] / d, v = perm[i + 1] / d;
        if (u == v) return false;
        edges.push_back({u, v});
    }
    for (auto [u, v] : edges) seen.push_back(pair_key(u, v));
    std::sort(seen.begin(), seen.end());
    for (size_t i = 1; i < seen.size(); ++i) {
        if (seen[i] == seen[i - 1]) return false;
    }
    return true;
}

}  // namespace

ColoredState pairing_sample(const HostInstance& inst, RngStream& rng, PairingStats* stats,
                            uint64_t pairing_budget) {
    std::vector<VertexPair> edges;
    for (uint64_t t = 0; t < pairing_budget; ++t) {
        if (stats) ++stats->pairings_tried;
        if (try_pairing(inst.n(), inst.d(), rng, edges)) return ColoredState(inst, edges);
    }
    throw Error(Errc::BudgetExhausted, "pairing_sample: no simple pairing within budget");
}

std::vector<VertexPair> pairing_edges(int n, int d, RngStream& rng, PairingStats* stats,
                                      uint64_t pairing_budget) {
    if ((static_cast<long long>(n) * d) % 2 != 0) throw Error(Errc::OddProduct, "d*n must be even");
    std::vector<VertexPair> edges;
    for (uint64_t t = 0; t < pairing_budget; ++t) {
        if (stats) ++stats->pairings_tried;
        if (try_pairing(n, d, rng, edges)) return edges;
    }
    throw Error(Errc::BudgetExhausted, "pairing_edges: no simple pairing within budget");
}

ColoredState initial_state(const HostInstance& inst, int i_max, RngStream& rng,
                           uint64_t restart_budget, InitialStats* stats) {
    for (uint64_t t = 0; t < restart_budget; ++t) {
        ColoredState s = pairing_sample(inst, rng, stats ? &stats->pairing : nullptr);
        if (stats) ++stats->draws;
        if (s.stratum() <= i_max) return s;
    }
    throw Error(Errc::BudgetExhausted, "initial_state: no draw with few enough red edges");
}

}  // namespace dfactor
