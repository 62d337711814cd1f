#include "dfactor/cache.hpp"

#include <algorithm>

namespace dfactor {

namespace {

int black_degree_of(const ColoredState& s, Vertex v) {
    int b = 0;
    for (Vertex w : s.neighbors(v)) {
        if (!s.instance().is_red(v, w)) ++b;
    }
    return b;
}

Count db_of(const ColoredState& s, const std::vector<int>& black_deg, Vertex v) {
    Count sum = 0;
    for (Vertex w : s.neighbors(v)) sum += static_cast<Count>(black_deg[w]);
    for (Vertex w : s.instance().red_neighbors(v)) {
        if (!s.has_edge(v, w)) sum += static_cast<Count>(black_deg[w]);
    }
    return sum;
}

bool in_tilde(const ColoredState& s, Vertex u, Vertex v) {
    return s.has_edge(u, v) || s.instance().is_red(u, v);
}

}  // namespace

void StructureCache::build(const ColoredState& s) {
    n = s.n();
    black_deg.assign(n, 0);
    db.assign(n, 0);
    ordered_black = 0;
    for (int v = 0; v < n; ++v) {
        black_deg[v] = black_degree_of(s, v);
        ordered_black += static_cast<Count>(black_deg[v]);
    }
    for (int v = 0; v < n; ++v) db[v] = db_of(s, black_deg, v);
}

void StructureCache::update(const ColoredState& s, const std::vector<VertexPair>& removed,
                            const std::vector<VertexPair>& added) {
    std::vector<Vertex> touched;
    auto visit = [&](const std::vector<VertexPair>& pairs) {
        for (auto [u, v] : pairs) {
            touched.push_back(u);
            touched.push_back(v);
        }
    };
    visit(removed);
    visit(added);
    for (Vertex v : std::vector<Vertex>(touched)) {
        for (Vertex w : s.neighbors(v)) touched.push_back(w);
        for (Vertex w : s.instance().red_neighbors(v)) touched.push_back(w);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (auto [u, v] : removed) {
        if (!s.instance().is_red(u, v)) ordered_black -= 2;
    }
    for (auto [u, v] : added) {
        if (!s.instance().is_red(u, v)) ordered_black += 2;
    }
    for (Vertex v : touched) black_deg[v] = black_degree_of(s, v);
    for (Vertex v : touched) db[v] = db_of(s, black_deg, v);
}

bool StructureCache::equals_rebuild(const ColoredState& s) const {
    StructureCache fresh;
    fresh.build(s);
    return fresh.ordered_black == ordered_black && fresh.black_deg == black_deg &&
           fresh.db == db;
}

namespace {

// per-anchor tallies over a pool of ordered pairs: how many pool members
// have a given first (cnt1) or second (cnt2) vertex, the pool size, and,
// per vertex x, how many pool members have their second... first component
// inside N~(x) u {x}
struct PoolTally {
    Count total = 0;
    std::vector<Count> cnt1, cnt2;  // by first / second pool vertex
    std::vector<Count> pn;          // pool members with first vertex in N~(x) u {x}

    void reset(int n) {
        total = 0;
        cnt1.assign(n, 0);
        cnt2.assign(n, 0);
        pn.assign(n, 0);
    }

    void finish(const ColoredState& s) {
        int n = s.n();
        for (Vertex x = 0; x < n; ++x) {
            Count sum = cnt1[x];
            for (Vertex w : s.neighbors(x)) sum += cnt1[w];
            for (Vertex w : s.instance().red_neighbors(x)) {
                if (!s.has_edge(x, w)) sum += cnt1[w];
            }
            pn[x] = sum;
        }
    }
};

struct HeavyCtx {
    const ColoredState* s;
    const StructureCache* cache;
    std::vector<Vertex> alist, blist;

    // direct evaluation of the final-pair count for the collision pass
    Count direct_pair(const std::vector<Vertex>& core_a, Vertex ta,
                      const std::vector<Vertex>& core_b, Vertex tb) {
        alist = core_a;
        for (Vertex w : s->neighbors(ta)) alist.push_back(w);
        for (Vertex w : s->instance().red_neighbors(ta)) alist.push_back(w);
        blist = core_b;
        for (Vertex w : s->neighbors(tb)) blist.push_back(w);
        for (Vertex w : s->instance().red_neighbors(tb)) blist.push_back(w);
        std::sort(alist.begin(), alist.end());
        alist.erase(std::unique(alist.begin(), alist.end()), alist.end());
        std::sort(blist.begin(), blist.end());
        blist.erase(std::unique(blist.begin(), blist.end()), blist.end());
        Count sum_a = 0, sum_b = 0, coupling = 0;
        for (Vertex v : alist) sum_a += static_cast<Count>(cache->black_deg[v]);
        for (Vertex v : blist) sum_b += static_cast<Count>(cache->black_deg[v]);
        for (Vertex v : blist) {
            for (Vertex w : s->neighbors(v)) {
                if (s->instance().is_red(v, w)) continue;
                if (std::binary_search(alist.begin(), alist.end(), w)) ++coupling;
            }
        }
        return cache->ordered_black - sum_a - sum_b + coupling;
    }
};

}  // namespace

// f_I = 2*T_left-black - T_all-black over the wing colour decomposition;
// each T sums, per anchored red edge, the middle-pair count aggregated over
// both wing pools at once
Count CachedEngine::f_typeI_cached(const ColoredState& s) {
    const int n = s.n();
    HeavyCtx hc{&s, &cache_, {}, {}};
    PoolTally lpool, rfree, rblack;
    std::vector<char> in_tilde_v1(n, 0), in_n_v0(n, 0), in_tilde_v0(n, 0);

    Count t_left = 0, t_both = 0;
    for (uint64_t rk : s.red_edge_keys()) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
            std::fill(in_tilde_v1.begin(), in_tilde_v1.end(), 0);
            std::fill(in_n_v0.begin(), in_n_v0.end(), 0);
            std::fill(in_tilde_v0.begin(), in_tilde_v0.end(), 0);
            for (Vertex w : s.neighbors(v1)) in_tilde_v1[w] = 1;
            for (Vertex w : s.instance().red_neighbors(v1)) in_tilde_v1[w] = 1;
            for (Vertex w : s.neighbors(v0)) in_n_v0[w] = in_tilde_v0[w] = 1;
            for (Vertex w : s.instance().red_neighbors(v0)) in_tilde_v0[w] = 1;

            // L pool: ordered black edges (v2,v3), v2 outside N~(v1)+{v0,v1},
            // v3 outside {v0,v1}
            lpool.reset(n);
            // R pools: ordered edges (v6,v7), v6,v7 outside {v0,v1};
            // "free": any colour, v7 not adjacent to v0;
            // "black": black edge, v7 outside N~(v0)
            rfree.reset(n);
            rblack.reset(n);
            for (uint64_t ek : s.edge_keys()) {
                auto [eu, ev] = key_pair(ek);
                bool red = s.instance().is_red(eu, ev);
                for (int p = 0; p < 2; ++p) {
                    Vertex a = p ? ev : eu, b = p ? eu : ev;
                    if (a != v0 && a != v1 && b != v0 && b != v1) {
                        if (!red && !in_tilde_v1[a] && a != v0 && a != v1) {
                            // (v2,v3) = (a,b)
                            lpool.total += 1;
                            lpool.cnt1[b] += 1;  // keyed by v3 for the x-side events
                            lpool.cnt2[a] += 1;  // keyed by v2
                        }
                        // (v6,v7) = (a,b)
                        if (!in_n_v0[b]) {
                            rfree.total += 1;
                            rfree.cnt1[a] += 1;  // keyed by v6
                            rfree.cnt2[b] += 1;  // keyed by v7
                        }
                        if (!red && !in_tilde_v0[b]) {
                            rblack.total += 1;
                            rblack.cnt1[a] += 1;
                            rblack.cnt2[b] += 1;
                        }
                    }
                }
            }
            lpool.finish(s);  // pn keyed by v3
            rfree.finish(s);  // pn keyed by v6
            rblack.finish(s);

            auto anchor_sum = [&](const PoolTally& rp, bool r_black_only) -> Count {
                // middle-pair-major aggregation
                Count part1 = 0;
                for (uint64_t ek : s.edge_keys()) {
                    auto [eu, ev] = key_pair(ek);
                    if (s.instance().is_red(eu, ev)) continue;
                    for (int p = 0; p < 2; ++p) {
                        Vertex x = p ? ev : eu, y = p ? eu : ev;
                        if (x == v0 || x == v1 || y == v0 || y == v1) continue;
                        // wing side: v3 events F1: v3 in N~(x)+{x}; F3: v2=y; F4: v3=y
                        Count nl = lpool.total - lpool.pn[x] - lpool.cnt2[y] - lpool.cnt1[y];
                        // F1 and F3 both: v2=y and v3 in N~(x)+{x}
                        if (!in_tilde_v1[y] && y != v0 && y != v1 && cache_.black_deg[y] > 0) {
                            for (Vertex v3c : s.neighbors(y)) {
                                if (s.instance().is_red(y, v3c)) continue;
                                if (v3c == v0 || v3c == v1) continue;
                                if (v3c == x || in_tilde(s, x, v3c)) nl += 1;
                            }
                        }
                        // F1 and F4: v3=y and x in N~(y)+{y}
                        if (x == y || in_tilde(s, x, y)) nl += lpool.cnt1[y];
                        // right side: E1: y in N~(v6)+{v6}; E2: v6=x; E3: v7=x
                        Count nr = rp.total - rp.pn[y] - rp.cnt1[x] - rp.cnt2[x];
                        if (y == x || in_tilde(s, x, y)) nr += rp.cnt1[x];
                        // E1 and E3: v7=x with y in N~(v6)+{v6}
                        if (x != v0 && x != v1) {
                            bool x_ok_v7 = r_black_only ? !in_tilde_v0[x] : !in_n_v0[x];
                            if (x_ok_v7) {
                                for (Vertex v6c : s.neighbors(x)) {
                                    if (r_black_only && s.instance().is_red(x, v6c)) continue;
                                    if (v6c == v0 || v6c == v1) continue;
                                    if (v6c == y || in_tilde(s, y, v6c)) nr += 1;
                                }
                            }
                        }
                        part1 += nl * nr;
                    }
                }
                // collision pass: wing pairs sharing a vertex (v7 == v2 is
                // permitted and is not a collision)
                Count part2 = 0;
                for (uint64_t ek : s.edge_keys()) {
                    auto [eu, ev] = key_pair(ek);
                    if (s.instance().is_red(eu, ev)) continue;
                    for (int p = 0; p < 2; ++p) {
                        Vertex v2 = p ? ev : eu, v3 = p ? eu : ev;
                        if (v2 == v0 || v2 == v1 || v3 == v0 || v3 == v1) continue;
                        if (in_tilde_v1[v2]) continue;
                        auto collide = [&](Vertex v6, Vertex v7) {
                            if (v6 == v0 || v6 == v1 || v7 == v0 || v7 == v1) return;
                            if (!s.has_edge(v6, v7)) return;
                            if (r_black_only) {
                                if (s.instance().is_red(v6, v7) || in_tilde_v0[v7]) return;
                            } else {
                                if (in_n_v0[v7]) return;
                            }
                            bool share = v6 == v2 || v6 == v3 || v7 == v3;
                            if (!share) return;
                            part2 += hc.direct_pair({v0, v1, v2, v3, v6, v7}, v3,
                                                    {v0, v1, v2, v3, v6, v7}, v6);
                        };
                        // v6 in {v2, v3}: v7 runs over their neighbours
                        for (Vertex v7 : s.neighbors(v2)) collide(v2, v7);
                        for (Vertex v7 : s.neighbors(v3)) collide(v3, v7);
                        // v7 == v3: v6 runs over v3's neighbours
                        for (Vertex v6 : s.neighbors(v3)) {
                            if (v6 == v2 || v6 == v3) continue;  // already handled / impossible
                            collide(v6, v3);
                        }
                    }
                }
                return part1 - part2;
            };

            t_left += anchor_sum(rfree, false);
            t_both += anchor_sum(rblack, true);
        }
    }
    return 2 * t_left - t_both;
}

Count CachedEngine::b_A_cached(const ColoredState& s) {
    const int n = s.n();
    PoolTally wing;
    std::vector<char> in_tilde_v2(n, 0), in_tilde_v7(n, 0);
    Count total = 0;
    for (uint64_t rk : s.instance().red_pair_keys()) {
        auto [ru, rv] = key_pair(rk);
        if (s.has_edge(ru, rv)) continue;
        for (int o = 0; o < 2; ++o) {
            Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
            for (Vertex v2 : s.neighbors(v1)) {
                if (v2 == v0 || s.instance().is_red(v1, v2)) continue;
                std::fill(in_tilde_v2.begin(), in_tilde_v2.end(), 0);
                for (Vertex w : s.neighbors(v2)) in_tilde_v2[w] = 1;
                for (Vertex w : s.instance().red_neighbors(v2)) in_tilde_v2[w] = 1;
                for (Vertex v7 : s.neighbors(v0)) {
                    if (v7 == v1 || s.instance().is_red(v0, v7)) continue;
                    // wing pool: (v3,v4) black edges, v3 outside
                    // N~(v2)+{v0,v1,v2,v7}, v4 outside {v0,v1,v2,v7}
                    wing.reset(n);
                    for (uint64_t ek : s.edge_keys()) {
                        auto [eu, ev] = key_pair(ek);
                        if (s.instance().is_red(eu, ev)) continue;
                        for (int p = 0; p < 2; ++p) {
                            Vertex a = p ? ev : eu, b = p ? eu : ev;
                            if (a == v0 || a == v1 || a == v2 || a == v7) continue;
                            if (b == v0 || b == v1 || b == v2 || b == v7) continue;
                            if (in_tilde_v2[a]) continue;
                            wing.total += 1;
                            wing.cnt1[b] += 1;  // keyed by v4
                            wing.cnt2[a] += 1;  // keyed by v3
                        }
                    }
                    wing.finish(s);  // pn keyed by v4

                    std::fill(in_tilde_v7.begin(), in_tilde_v7.end(), 0);
                    for (Vertex w : s.neighbors(v7)) in_tilde_v7[w] = 1;
                    for (Vertex w : s.instance().red_neighbors(v7)) in_tilde_v7[w] = 1;

                    for (uint64_t ek : s.edge_keys()) {
                        auto [eu, ev] = key_pair(ek);
                        if (s.instance().is_red(eu, ev)) continue;
                        for (int p = 0; p < 2; ++p) {
                            Vertex x = p ? ev : eu, y = p ? eu : ev;
                            // (v5,v6) = (x,y): y outside N~(v7)+cores,
                            // x outside cores
                            if (x == v0 || x == v1 || x == v2 || x == v7) continue;
                            if (y == v0 || y == v1 || y == v2 || y == v7) continue;
                            if (in_tilde_v7[y]) continue;
                            // wing events: G1: x in N~(v4)+{v4}; G3: v3=y; G4: v4=y
                            Count nw = wing.total - wing.pn[x] - wing.cnt2[y] - wing.cnt1[y];
                            // G1 and G3: v3=y, x in N~(v4)+{v4}
                            if (!in_tilde_v2[y]) {
                                for (Vertex v4c : s.neighbors(y)) {
                                    if (s.instance().is_red(y, v4c)) continue;
                                    if (v4c == v0 || v4c == v1 || v4c == v2 || v4c == v7) continue;
                                    if (v4c == x || in_tilde(s, x, v4c)) nw += 1;
                                }
                            }
                            // G1 and G4: v4=y, x in N~(y)+{y}
                            if (x == y || in_tilde(s, x, y)) nw += wing.cnt1[y];
                            total += nw;
                        }
                    }
                }
            }
        }
    }
    return total;
}

Count CachedEngine::f_easy(const ColoredState& s) { return fallback_.f_easy(s); }
Count CachedEngine::b_easy(const ColoredState& s) { return fallback_.b_easy(s); }

Count CachedEngine::f_type(const ColoredState& s, SwitchType t) {
    if (t == SwitchType::I) return f_typeI_cached(s);
    return fallback_.f_type(s, t);
}

Count CachedEngine::b_class(const ColoredState& s, SwitchClass a) {
    if (a == SwitchClass::A) return b_A_cached(s);
    return fallback_.b_class(s, a);
}

Count CachedEngine::bhat(const ColoredState& s, const OctagonTuple& oct, SwitchType t) {
    return fallback_.bhat(s, oct, t);
}

}  // namespace dfactor
