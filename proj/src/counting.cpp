#include "dfactor/counting.hpp"

#include <algorithm>
#include <cassert>

namespace dfactor {

std::string count_to_string(Count c) {
    if (c == 0) return "0";
    std::string s;
    while (c) {
        s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
        c /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

BigInt count_to_bigint(Count c) { return BigInt::from_u128(c); }

namespace {

// scratch marker with generation stamps, shared by the counting loops
struct Stamp {
    std::vector<uint32_t> mark;
    uint32_t gen = 0;
    void reset(size_t n) {
        if (mark.size() < n) mark.assign(n, 0);
        if (++gen == 0) {
            std::fill(mark.begin(), mark.end(), 0);
            gen = 1;
        }
    }
    bool insert(Vertex v) {
        if (mark[v] == gen) return false;
        mark[v] = gen;
        return true;
    }
    bool has(Vertex v) const { return mark[v] == gen; }
};

struct Ctx {
    const ColoredState* s;
    const HostInstance* inst;
    int n, d;
    Count ordered_black;          // dn - 2i
    std::vector<int> black_deg;   // per vertex
    Stamp sa, sb;

    explicit Ctx(const ColoredState& st) : s(&st), inst(&st.instance()) {
        n = st.n();
        d = st.d();
        black_deg.assign(n, 0);
        Count ob = 0;
        for (int v = 0; v < n; ++v) {
            int b = 0;
            for (Vertex w : st.neighbors(v)) {
                if (!inst->is_red(v, w)) ++b;
            }
            black_deg[v] = b;
            ob += static_cast<Count>(b);
        }
        ordered_black = ob;
        sa.reset(n);
        sb.reset(n);
    }

    bool tilde(Vertex u, Vertex v) const { return s->has_edge(u, v) || inst->is_red(u, v); }

    // black G-neighbours scan
    template <typename F>
    void for_black_neighbors(Vertex v, F&& f) const {
        for (Vertex w : s->neighbors(v)) {
            if (!inst->is_red(v, w)) f(w);
        }
    }

    // red K_n neighbours with no G edge
    template <typename F>
    void for_red_non_neighbors(Vertex v, F&& f) const {
        for (Vertex w : inst->red_neighbors(v)) {
            if (!s->has_edge(v, w)) f(w);
        }
    }
};

// ordered black edges (x, y) with x outside A and y outside B; computed by
// inclusion-exclusion over the two small sets
Count last_pair_count(Ctx& c, const std::vector<Vertex>& alist, const std::vector<Vertex>& blist) {
    c.sa.reset(c.n);
    c.sb.reset(c.n);
    Count sum_a = 0, sum_b = 0, coupling = 0;
    for (Vertex v : alist) {
        if (c.sa.insert(v)) sum_a += static_cast<Count>(c.black_deg[v]);
    }
    for (Vertex v : blist) {
        if (c.sb.insert(v)) sum_b += static_cast<Count>(c.black_deg[v]);
    }
    // coupling: black edges with one end in A and the other in B
    c.sb.reset(c.n);
    for (Vertex v : blist) {
        if (!c.sb.insert(v)) continue;
        c.for_black_neighbors(v, [&](Vertex w) {
            if (c.sa.has(w)) ++coupling;
        });
    }
    Count total = c.ordered_black;
    total -= sum_a;
    total -= sum_b;
    total += coupling;
    return total;
}

// enumerate the k-th ordered black edge (x, y) with x outside A, y outside B
bool last_pair_at(Ctx& c, const std::vector<Vertex>& alist, const std::vector<Vertex>& blist,
                  Count k, VertexPair& out) {
    c.sa.reset(c.n);
    c.sb.reset(c.n);
    for (Vertex v : alist) c.sa.insert(v);
    for (Vertex v : blist) c.sb.insert(v);
    for (uint64_t key : c.s->edge_keys()) {
        auto [u, v] = key_pair(key);
        if (c.inst->is_red(u, v)) continue;
        if (!c.sa.has(u) && !c.sb.has(v)) {
            if (k == 0) {
                out = {u, v};
                return true;
            }
            --k;
        }
        if (!c.sa.has(v) && !c.sb.has(u)) {
            if (k == 0) {
                out = {v, u};
                return true;
            }
            --k;
        }
    }
    return false;
}

void build_A(Ctx& c, std::vector<Vertex>& out, std::initializer_list<Vertex> core, Vertex tilde_of) {
    out.clear();
    for (Vertex v : core) out.push_back(v);
    for (Vertex w : c.s->neighbors(tilde_of)) out.push_back(w);
    for (Vertex w : c.inst->red_neighbors(tilde_of)) out.push_back(w);
}

// walk context shared by count and pick: when `want` is set, the enumeration
// stops once the running index passes it
struct Walk {
    Count total = 0;
    bool picking = false;
    Count want = 0;
    bool done = false;
    SwitchMove move;
    ThreeEdgeTuple easy{};

    // returns true when the walk is finished
    bool block(Ctx& c, Count cnt, const std::vector<Vertex>& alist,
               const std::vector<Vertex>& blist, auto&& emit) {
        if (!picking) {
            total += cnt;
            return false;
        }
        if (done) return true;
        if (want >= total + cnt) {
            total += cnt;
            return false;
        }
        VertexPair xy;
        if (!last_pair_at(c, alist, blist, want - total, xy))
            throw Error(Errc::NoValidMove, "pick walk desynchronised from count");
        emit(xy);
        done = true;
        return true;
    }
};

// ---- 3-edge switching counts ----

void walk_f_easy(Ctx& c, Walk& w) {
    std::vector<Vertex> alist, blist;
    auto reds = c.s->red_edge_keys();
    for (uint64_t rk : reds) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
            for (uint64_t ek : c.s->edge_keys()) {
                auto [eu, ev] = key_pair(ek);
                if (c.inst->is_red(eu, ev)) continue;
                for (int p = 0; p < 2; ++p) {
                    Vertex v2 = p ? ev : eu, v3 = p ? eu : ev;
                    if (v2 == v0 || v2 == v1 || v3 == v0 || v3 == v1) continue;
                    if (c.tilde(v1, v2)) continue;
                    // (v4,v5): black edge, v4 notin N~(v3) u {v0..v3},
                    // v5 notin N~(v0) u {v0,v1,v3}; v5 == v2 permitted
                    build_A(c, alist, {v0, v1, v2, v3}, v3);
                    build_A(c, blist, {v0, v1, v3}, v0);
                    Count cnt = last_pair_count(c, alist, blist);
                    bool fin = w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                        w.easy = {v0, v1, v2, v3, xy.first, xy.second};
                    });
                    if (fin) return;
                }
            }
        }
    }
}

void walk_b_easy(Ctx& c, Walk& w) {
    std::vector<Vertex> alist, blist;
    for (uint64_t rk : c.inst->red_pair_keys()) {
        auto [ru, rv] = key_pair(rk);
        if (c.s->has_edge(ru, rv)) continue;
        for (int o = 0; o < 2; ++o) {
            Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
            c.for_black_neighbors(v1, [&](Vertex v2) {
                if (v2 == v0) return;
                c.for_black_neighbors(v0, [&](Vertex v5) {
                    if (v5 == v1) return;  // v5 == v2 permitted
                    if (w.done) return;
                    // (v3,v4): black edge avoiding N~(v2) and N~(v5)
                    build_A(c, alist, {v0, v1, v2, v5}, v2);
                    build_A(c, blist, {v0, v1, v2, v5}, v5);
                    Count cnt = last_pair_count(c, alist, blist);
                    w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                        w.easy = {v0, v1, v2, xy.first, xy.second, v5};
                    });
                });
            });
            if (w.done) return;
        }
    }
}

// ---- Type I ----

void walk_typeI(Ctx& c, Walk& w) {
    std::vector<Vertex> alist, blist;
    auto reds = c.s->red_edge_keys();
    for (uint64_t rk : reds) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
            for (uint64_t ek : c.s->edge_keys()) {
                auto [eu, ev] = key_pair(ek);
                for (int p = 0; p < 2; ++p) {
                    Vertex v2 = p ? ev : eu, v3 = p ? eu : ev;
                    if (v2 == v0 || v2 == v1 || v3 == v0 || v3 == v1) continue;
                    if (c.s->has_edge(v1, v2)) continue;
                    bool left_red = c.inst->is_red(v1, v2) || c.inst->is_red(v2, v3);
                    for (uint64_t fk : c.s->edge_keys()) {
                        auto [fu, fv] = key_pair(fk);
                        for (int q = 0; q < 2; ++q) {
                            Vertex v6 = q ? fv : fu, v7 = q ? fu : fv;
                            if (v6 == v0 || v6 == v1 || v6 == v2 || v6 == v3) continue;
                            if (v7 == v0 || v7 == v1 || v7 == v3) continue;  // v7 == v2 ok
                            if (c.s->has_edge(v0, v7)) continue;
                            bool right_red = c.inst->is_red(v0, v7) || c.inst->is_red(v6, v7);
                            if (left_red && right_red) continue;
                            build_A(c, alist, {v0, v1, v2, v3, v6, v7}, v3);
                            build_A(c, blist, {v0, v1, v2, v3, v6, v7}, v6);
                            Count cnt = last_pair_count(c, alist, blist);
                            bool fin = w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                                w.move.type = SwitchType::I;
                                w.move.oct = {v0, v1, v2, v3, xy.first, xy.second, v6, v7};
                                auto cls = detail::typeI_resolve_class(*c.s, w.move.oct);
                                w.move.cls = *cls;
                            });
                            if (fin) return;
                        }
                    }
                }
            }
        }
    }
}

// ---- IIa / III octagon patterns (they differ only in the v0v1 slot) ----

void walk_booster8(Ctx& c, Walk& w, bool red_edge_anchor, SwitchType type) {
    std::vector<Vertex> alist, blist;
    auto run_anchor = [&](Vertex v0, Vertex v1) {
        c.for_red_non_neighbors(v1, [&](Vertex v2) {
            if (v2 == v0 || w.done) return;
            c.for_red_non_neighbors(v0, [&](Vertex v7) {
                if (v7 == v1 || w.done) return;  // v7 == v2 permitted
                c.for_black_neighbors(v2, [&](Vertex v3) {
                    if (v3 == v0 || v3 == v1 || v3 == v7 || w.done) return;
                    c.for_black_neighbors(v7, [&](Vertex v6) {
                        if (v6 == v0 || v6 == v1 || v6 == v2 || v6 == v3 || w.done) return;
                        build_A(c, alist, {v0, v1, v2, v3, v6, v7}, v3);
                        build_A(c, blist, {v0, v1, v2, v3, v6, v7}, v6);
                        Count cnt = last_pair_count(c, alist, blist);
                        w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                            w.move.type = type;
                            w.move.cls = (type == SwitchType::IIaPlus)    ? SwitchClass::B1Plus
                                         : (type == SwitchType::IIaMinus) ? SwitchClass::B1Minus
                                         : (type == SwitchType::IIIPlus)  ? SwitchClass::CPlus
                                                                          : SwitchClass::CMinus;
                            w.move.oct = {v0, v1, v2, v3, xy.first, xy.second, v6, v7};
                        });
                    });
                });
            });
        });
    };
    if (red_edge_anchor) {
        for (uint64_t rk : c.s->red_edge_keys()) {
            auto [ru, rv] = key_pair(rk);
            run_anchor(ru, rv);
            if (w.done) return;
            run_anchor(rv, ru);
            if (w.done) return;
        }
    } else {
        for (uint64_t rk : c.inst->red_pair_keys()) {
            auto [ru, rv] = key_pair(rk);
            if (c.s->has_edge(ru, rv)) continue;
            run_anchor(ru, rv);
            if (w.done) return;
            run_anchor(rv, ru);
            if (w.done) return;
        }
    }
}

// ---- inverse Type I patterns (class counts) ----

// common b_A / b_B2 / b_C shape: a four-vertex head (v0,v1,v2,v7) and an
// explicit wing (v3,v4), with the (v5,v6) pair counted in closed form
void walk_inverse(Ctx& c, Walk& w, SwitchClass cls) {
    std::vector<Vertex> alist, blist;
    auto final_block = [&](Vertex v0, Vertex v1, Vertex v2, Vertex v3, Vertex v4, Vertex v7) {
        // (v5,v6): black edge, v5 notin N~(v4), v6 notin N~(v7)
        build_A(c, alist, {v0, v1, v2, v3, v4, v7}, v4);
        build_A(c, blist, {v0, v1, v2, v3, v4, v7}, v7);
        Count cnt = last_pair_count(c, alist, blist);
        w.block(c, cnt, alist, blist, [&](VertexPair xy) {
            w.move.oct = {v0, v1, v2, v3, v4, xy.first, xy.second, v7};
            w.move.cls = cls;
        });
    };

    if (cls == SwitchClass::A || cls == SwitchClass::B2Plus || cls == SwitchClass::B2Minus) {
        for (uint64_t rk : c.inst->red_pair_keys()) {
            auto [ru, rv] = key_pair(rk);
            if (c.s->has_edge(ru, rv)) continue;
            for (int o = 0; o < 2; ++o) {
                Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
                c.for_black_neighbors(v1, [&](Vertex v2) {
                    if (v2 == v0 || w.done) return;
                    c.for_black_neighbors(v0, [&](Vertex v7) {
                        if (v7 == v1 || w.done) return;  // v7 == v2 permitted
                        if (cls == SwitchClass::A) {
                            // (v3,v4): black edge, v3 notin N~(v2)
                            for (uint64_t ek : c.s->edge_keys()) {
                                auto [eu, ev] = key_pair(ek);
                                if (c.inst->is_red(eu, ev)) continue;
                                for (int p = 0; p < 2; ++p) {
                                    Vertex v3 = p ? ev : eu, v4 = p ? eu : ev;
                                    if (v3 == v0 || v3 == v1 || v3 == v2 || v3 == v7) continue;
                                    if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7) continue;
                                    if (c.tilde(v2, v3)) continue;
                                    final_block(v0, v1, v2, v3, v4, v7);
                                    if (w.done) return;
                                }
                            }
                        } else {
                            // B2: v2v3 is a red non-edge, then v4 in NB(v3)
                            c.for_red_non_neighbors(v2, [&](Vertex v3) {
                                if (v3 == v0 || v3 == v1 || v3 == v7 || w.done) return;
                                c.for_black_neighbors(v3, [&](Vertex v4) {
                                    if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7 || w.done)
                                        return;
                                    final_block(v0, v1, v2, v3, v4, v7);
                                });
                            });
                        }
                    });
                });
                if (w.done) return;
            }
        }
    } else {
        // C: anchored on the red edge v1v2 with red non-edges v0v1, v2v3
        for (uint64_t rk : c.s->red_edge_keys()) {
            auto [ru, rv] = key_pair(rk);
            for (int o = 0; o < 2; ++o) {
                Vertex v1 = o ? rv : ru, v2 = o ? ru : rv;
                c.for_red_non_neighbors(v1, [&](Vertex v0) {
                    if (v0 == v2 || w.done) return;
                    c.for_red_non_neighbors(v2, [&](Vertex v3) {
                        if (v3 == v0 || v3 == v1 || w.done) return;
                        c.for_black_neighbors(v0, [&](Vertex v7) {
                            if (v7 == v1 || v7 == v3 || w.done) return;  // v7 == v2 permitted
                            c.for_black_neighbors(v3, [&](Vertex v4) {
                                if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7 || w.done) return;
                                final_block(v0, v1, v2, v3, v4, v7);
                            });
                        });
                    });
                });
                if (w.done) return;
            }
        }
    }
}

// mirror a class for the minus-side enumerations
SwitchClass mirror_class(SwitchClass cls) {
    switch (cls) {
        case SwitchClass::B1Minus: return SwitchClass::B1Plus;
        case SwitchClass::B2Minus: return SwitchClass::B2Plus;
        case SwitchClass::CMinus: return SwitchClass::CPlus;
        default: return cls;
    }
}

// ---- gadget machinery (IIb / IIc) ----

// forward gadget on (a,b): y1 in NB(a), y3 in NB(b), (y2,y4) black edge with
// y2 notin N~(y1), y4 notin N~(y3), everything outside `used`
template <typename F>
void forward_gadgets(Ctx& c, Vertex a, Vertex b, Stamp& used, F&& f) {
    c.for_black_neighbors(a, [&](Vertex y1) {
        if (used.has(y1)) return;
        c.for_black_neighbors(b, [&](Vertex y3) {
            if (used.has(y3) || y3 == y1) return;
            for (uint64_t ek : c.s->edge_keys()) {
                auto [eu, ev] = key_pair(ek);
                if (c.inst->is_red(eu, ev)) continue;
                for (int p = 0; p < 2; ++p) {
                    Vertex y2 = p ? ev : eu, y4 = p ? eu : ev;
                    if (used.has(y2) || used.has(y4) || y2 == y1 || y2 == y3 || y4 == y1 ||
                        y4 == y3)
                        continue;
                    if (c.tilde(y1, y2) || c.tilde(y3, y4)) continue;
                    f(y1, y2, y3, y4);
                }
            }
        });
    });
}

// inverse gadget on (a,b): (y1,y2) and (y3,y4) black edges with
// a.y1, y2.y4, b.y3 all outside G~; `stop` aborts the scan
template <typename F, typename Stop>
void inverse_gadgets(Ctx& c, Vertex a, Vertex b, Stamp& used, F&& f, Stop&& stop) {
    for (uint64_t ek : c.s->edge_keys()) {
        if (stop()) return;
        auto [eu, ev] = key_pair(ek);
        if (c.inst->is_red(eu, ev)) continue;
        for (int p = 0; p < 2; ++p) {
            Vertex y1 = p ? ev : eu, y2 = p ? eu : ev;
            if (used.has(y1) || used.has(y2)) continue;
            if (c.tilde(a, y1)) continue;
            for (uint64_t fk : c.s->edge_keys()) {
                if (stop()) return;
                auto [fu, fv] = key_pair(fk);
                if (c.inst->is_red(fu, fv)) continue;
                for (int q = 0; q < 2; ++q) {
                    Vertex y3 = q ? fv : fu, y4 = q ? fu : fv;
                    if (used.has(y3) || used.has(y4)) continue;
                    if (y3 == y1 || y3 == y2 || y4 == y1 || y4 == y2) continue;
                    if (c.tilde(b, y3) || c.tilde(y2, y4)) continue;
                    f(y1, y2, y3, y4);
                }
            }
        }
    }
}

void mark_octagon(Ctx& c, Stamp& st, const OctagonTuple& v) {
    st.reset(c.n);
    for (Vertex x : v) st.insert(x);
}

// IIb/IIc forward walk over (context, gadget tuples); gadget one explicit,
// gadget two (and three) nested with the final pair enumerated per block
void walk_IIbc(Ctx& c, Walk& w, bool is_iic, SwitchType type) {
    Stamp used;
    auto contexts = [&](auto&& handle) {
        for (uint64_t rk : c.inst->red_pair_keys()) {
            auto [ru, rv] = key_pair(rk);
            if (c.s->has_edge(ru, rv)) continue;
            for (int o = 0; o < 2; ++o) {
                Vertex v0 = o ? rv : ru, v1 = o ? ru : rv;
                c.for_red_non_neighbors(v1, [&](Vertex v2) {
                    if (v2 == v0 || w.done) return;
                    auto with_v7 = [&](Vertex v7) {
                        if (w.done) return;
                        // wings (v3,v4), (v5,v6); v7 == v2 permitted
                        for (uint64_t ek : c.s->edge_keys()) {
                            auto [eu, ev] = key_pair(ek);
                            if (c.inst->is_red(eu, ev)) continue;
                            for (int p = 0; p < 2; ++p) {
                                Vertex v3 = p ? ev : eu, v4 = p ? eu : ev;
                                if (v3 == v0 || v3 == v1 || v3 == v2 || v3 == v7) continue;
                                if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7) continue;
                                if (c.tilde(v2, v3)) continue;
                                for (uint64_t fk : c.s->edge_keys()) {
                                    auto [fu, fv] = key_pair(fk);
                                    if (c.inst->is_red(fu, fv)) continue;
                                    for (int q = 0; q < 2; ++q) {
                                        Vertex v5 = q ? fv : fu, v6 = q ? fu : fv;
                                        if (v5 == v0 || v5 == v1 || v5 == v2 || v5 == v3 ||
                                            v5 == v4 || v5 == v7)
                                            continue;
                                        if (v6 == v0 || v6 == v1 || v6 == v2 || v6 == v3 ||
                                            v6 == v4 || v6 == v7)
                                            continue;
                                        if (c.tilde(v4, v5) || c.tilde(v6, v7)) continue;
                                        OctagonTuple oct = {v0, v1, v2, v3, v4, v5, v6, v7};
                                        handle(oct);
                                        if (w.done) return;
                                    }
                                }
                            }
                        }
                    };
                    if (is_iic) {
                        c.for_red_non_neighbors(v0, [&](Vertex v7) {
                            if (w.done) return;
                            if (v7 != v1) with_v7(v7);
                        });
                    } else {
                        c.for_black_neighbors(v0, [&](Vertex v7) {
                            if (w.done) return;
                            if (v7 != v1) with_v7(v7);
                        });
                    }
                });
                if (w.done) return;
            }
        }
    };

    std::vector<Vertex> alist, blist;
    contexts([&](const OctagonTuple& oct) {
        mark_octagon(c, used, oct);
        forward_gadgets(c, oct[0], oct[1], used, [&](Vertex y1, Vertex y2, Vertex y3, Vertex y4) {
            if (w.done) return;
            used.insert(y1);
            used.insert(y2);
            used.insert(y3);
            used.insert(y4);
            if (!is_iic) {
                // gadget (v1,v2): y5 in NB(v1), y7 in NB(v2), (y6,y8) counted
                c.for_black_neighbors(oct[1], [&](Vertex y5) {
                    if (used.has(y5) || w.done) return;
                    c.for_black_neighbors(oct[2], [&](Vertex y7) {
                        if (used.has(y7) || y7 == y5 || w.done) return;
                        alist.clear();
                        blist.clear();
                        for (Vertex x : oct) alist.push_back(x);
                        alist.insert(alist.end(), {y1, y2, y3, y4, y5, y7});
                        blist = alist;
                        for (Vertex z : c.s->neighbors(y5)) alist.push_back(z);
                        for (Vertex z : c.inst->red_neighbors(y5)) alist.push_back(z);
                        for (Vertex z : c.s->neighbors(y7)) blist.push_back(z);
                        for (Vertex z : c.inst->red_neighbors(y7)) blist.push_back(z);
                        Count cnt = last_pair_count(c, alist, blist);
                        w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                            w.move.type = type;
                            w.move.cls = (type == SwitchType::IIbPlus) ? SwitchClass::B1Plus
                                                                       : SwitchClass::B1Minus;
                            w.move.oct = oct;
                            w.move.gadget = {y1, y2, y3, y4, y5, xy.first, y7, xy.second};
                        });
                    });
                });
            } else {
                forward_gadgets(c, oct[1], oct[2], used,
                                [&](Vertex y5, Vertex y6, Vertex y7, Vertex y8) {
                    if (w.done) return;
                    used.insert(y5);
                    used.insert(y6);
                    used.insert(y7);
                    used.insert(y8);
                    // gadget (v0,v7): y9 in NB(v0), y11 in NB(v7), (y10,y12) counted
                    c.for_black_neighbors(oct[0], [&](Vertex y9) {
                        if (used.has(y9) || w.done) return;
                        c.for_black_neighbors(oct[7], [&](Vertex y11) {
                            if (used.has(y11) || y11 == y9 || w.done) return;
                            alist.clear();
                            blist.clear();
                            for (Vertex x : oct) alist.push_back(x);
                            alist.insert(alist.end(), {y1, y2, y3, y4, y5, y6, y7, y8, y9, y11});
                            blist = alist;
                            for (Vertex z : c.s->neighbors(y9)) alist.push_back(z);
                            for (Vertex z : c.inst->red_neighbors(y9)) alist.push_back(z);
                            for (Vertex z : c.s->neighbors(y11)) blist.push_back(z);
                            for (Vertex z : c.inst->red_neighbors(y11)) blist.push_back(z);
                            Count cnt = last_pair_count(c, alist, blist);
                            w.block(c, cnt, alist, blist, [&](VertexPair xy) {
                                w.move.type = type;
                                w.move.cls = (type == SwitchType::IIcPlus) ? SwitchClass::B1Plus
                                                                           : SwitchClass::B1Minus;
                                w.move.oct = oct;
                                w.move.gadget = {y1, y2, y3, y4, y5, y6, y7, y8,
                                                 y9, xy.first, y11, xy.second};
                            });
                        });
                    });
                    // un-mark gadget two
                    if (!w.done) {
                        // stamps have no erase; rebuild
                        mark_octagon(c, used, oct);
                        used.insert(y1);
                        used.insert(y2);
                        used.insert(y3);
                        used.insert(y4);
                    }
                });
            }
            if (!w.done) mark_octagon(c, used, oct);
        });
    });
}

}  // namespace

// number of inverse gadget completions on an octagon already present in the
// graph (octagon in plus-normal form; `t` picks IIb or IIc arity); with
// `existence_only` the scan stops at the first completion
static Count bhat_impl(const ColoredState& s, const OctagonTuple& oct, SwitchType t,
                       bool existence_only = false) {
    {
        // gadget vertices must avoid the octagon entirely; when the vertex
        // set cannot host them the count is structurally zero
        int distinct = 8 - (oct[2] == oct[7] ? 1 : 0);
        if (distinct + gadget_arity(t) > s.n()) return 0;
    }
    Ctx c(s);
    Stamp used;
    mark_octagon(c, used, oct);
    bool iic = t == SwitchType::IIcPlus || t == SwitchType::IIcMinus;
    Count total = 0;
    std::vector<Vertex> alist, blist;
    auto stop = [&]() { return existence_only && total > 0; };
    inverse_gadgets(c, oct[0], oct[1], used, [&](Vertex y1, Vertex y2, Vertex y3, Vertex y4) {
        if (stop()) return;
        used.insert(y1);
        used.insert(y2);
        used.insert(y3);
        used.insert(y4);
        if (!iic) {
            // gadget (v1,v2): (y5,y6) explicit black edge, (y7,y8) counted
            for (uint64_t ek : c.s->edge_keys()) {
                if (existence_only && total > 0) break;
                auto [eu, ev] = key_pair(ek);
                if (c.inst->is_red(eu, ev)) continue;
                for (int p = 0; p < 2; ++p) {
                    Vertex y5 = p ? ev : eu, y6 = p ? eu : ev;
                    if (used.has(y5) || used.has(y6)) continue;
                    if (c.tilde(oct[1], y5)) continue;
                    alist.clear();
                    blist.clear();
                    for (Vertex x : oct) alist.push_back(x);
                    alist.insert(alist.end(), {y1, y2, y3, y4, y5, y6});
                    blist = alist;
                    for (Vertex z : c.s->neighbors(oct[2])) alist.push_back(z);
                    for (Vertex z : c.inst->red_neighbors(oct[2])) alist.push_back(z);
                    for (Vertex z : c.s->neighbors(y6)) blist.push_back(z);
                    for (Vertex z : c.inst->red_neighbors(y6)) blist.push_back(z);
                    total += last_pair_count(c, alist, blist);
                }
            }
        } else {
            inverse_gadgets(c, oct[1], oct[2], used,
                            [&](Vertex y5, Vertex y6, Vertex y7, Vertex y8) {
                if (stop()) return;
                used.insert(y5);
                used.insert(y6);
                used.insert(y7);
                used.insert(y8);
                for (uint64_t ek : c.s->edge_keys()) {
                    if (existence_only && total > 0) break;
                    auto [eu, ev] = key_pair(ek);
                    if (c.inst->is_red(eu, ev)) continue;
                    for (int p = 0; p < 2; ++p) {
                        Vertex y9 = p ? ev : eu, y10 = p ? eu : ev;
                        if (used.has(y9) || used.has(y10)) continue;
                        if (c.tilde(oct[0], y9)) continue;
                        alist.clear();
                        blist.clear();
                        for (Vertex x : oct) alist.push_back(x);
                        alist.insert(alist.end(), {y1, y2, y3, y4, y5, y6, y7, y8, y9, y10});
                        blist = alist;
                        for (Vertex z : c.s->neighbors(oct[7])) alist.push_back(z);
                        for (Vertex z : c.inst->red_neighbors(oct[7])) alist.push_back(z);
                        for (Vertex z : c.s->neighbors(y10)) blist.push_back(z);
                        for (Vertex z : c.inst->red_neighbors(y10)) blist.push_back(z);
                        total += last_pair_count(c, alist, blist);
                    }
                }
                mark_octagon(c, used, oct);
                used.insert(y1);
                used.insert(y2);
                used.insert(y3);
                used.insert(y4);
            }, stop);
        }
        mark_octagon(c, used, oct);
    }, stop);
    return total;
}

// Octagon counts by variant. The enumeration is over the plus labelling;
// mirroring the tuple is a bijection between the B1+ and B1- octagon sets,
// so the counts serve both classes.
B1Breakdown b1_breakdown(const ColoredState& s, SwitchClass cls, bool require_completable) {
    (void)cls;
    B1Breakdown out;
    Ctx c(s);
    std::vector<Vertex> alist, blist;
    for (uint64_t rk : s.red_edge_keys()) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            Vertex v1 = o ? rv : ru, v2 = o ? ru : rv;
            for (Vertex v0 : s.instance().red_neighbors(v1)) {
                if (v0 == v2) continue;
                bool present01 = s.has_edge(v0, v1);
                for (Vertex v7 : s.neighbors(v0)) {
                    if (v7 == v1) continue;  // v7 == v2 permitted
                    bool red07 = s.instance().is_red(v0, v7);
                    B1Variant variant = !present01 ? (red07 ? B1Variant::IIa : B1Variant::I)
                                                   : (red07 ? B1Variant::IIc : B1Variant::IIb);
                    bool heavy = require_completable &&
                                 (variant == B1Variant::IIb || variant == B1Variant::IIc);
                    // with too few vertices no gadget completion can exist,
                    // so completable-only counting of these variants is zero
                    int arity = variant == B1Variant::IIc ? 12 : 8;
                    if (heavy && 7 + arity > s.n()) continue;
                    Count sub = 0;
                    for (uint64_t ek : s.edge_keys()) {
                        auto [eu, ev] = key_pair(ek);
                        if (s.instance().is_red(eu, ev)) continue;
                        for (int p = 0; p < 2; ++p) {
                            Vertex v3 = p ? ev : eu, v4 = p ? eu : ev;
                            if (v3 == v0 || v3 == v1 || v3 == v2 || v3 == v7) continue;
                            if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7) continue;
                            if (c.tilde(v2, v3)) continue;
                            build_A(c, alist, {v0, v1, v2, v3, v4, v7}, v4);
                            build_A(c, blist, {v0, v1, v2, v3, v4, v7}, v7);
                            if (!heavy) {
                                sub += last_pair_count(c, alist, blist);
                                continue;
                            }
                            // instantiate (v5,v6) and keep only octagons
                            // that admit a gadget completion
                            c.sa.reset(c.n);
                            c.sb.reset(c.n);
                            for (Vertex x : alist) c.sa.insert(x);
                            for (Vertex x : blist) c.sb.insert(x);
                            SwitchType t = variant == B1Variant::IIb ? SwitchType::IIbPlus
                                                                     : SwitchType::IIcPlus;
                            for (uint64_t fk : s.edge_keys()) {
                                auto [fu, fv] = key_pair(fk);
                                if (s.instance().is_red(fu, fv)) continue;
                                for (int q = 0; q < 2; ++q) {
                                    Vertex v5 = q ? fv : fu, v6 = q ? fu : fv;
                                    if (c.sa.has(v5) || c.sb.has(v6)) continue;
                                    OctagonTuple oct = {v0, v1, v2, v3, v4, v5, v6, v7};
                                    if (bhat_impl(s, oct, t, true) > 0) sub += 1;
                                }
                            }
                        }
                    }
                    switch (variant) {
                        case B1Variant::I: out.variant_I += sub; break;
                        case B1Variant::IIa: out.variant_IIa += sub; break;
                        case B1Variant::IIb: out.variant_IIb += sub; break;
                        case B1Variant::IIc: out.variant_IIc += sub; break;
                    }
                }
            }
        }
    }
    return out;
}

void for_each_b1_octagon(const ColoredState& s, SwitchClass cls,
                         const std::function<void(const OctagonTuple&, B1Variant)>& f) {
    (void)cls;  // plus and minus octagon sets are mirror images
    Ctx c(s);
    std::vector<Vertex> alist, blist;
    for (uint64_t rk : s.red_edge_keys()) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            Vertex v1 = o ? rv : ru, v2 = o ? ru : rv;
            for (Vertex v0 : s.instance().red_neighbors(v1)) {
                if (v0 == v2) continue;
                bool present01 = s.has_edge(v0, v1);
                for (Vertex v7 : s.neighbors(v0)) {
                    if (v7 == v1) continue;  // v7 == v2 permitted
                    bool red07 = s.instance().is_red(v0, v7);
                    B1Variant variant = !present01 ? (red07 ? B1Variant::IIa : B1Variant::I)
                                                   : (red07 ? B1Variant::IIc : B1Variant::IIb);
                    for (uint64_t ek : s.edge_keys()) {
                        auto [eu, ev] = key_pair(ek);
                        if (s.instance().is_red(eu, ev)) continue;
                        for (int p = 0; p < 2; ++p) {
                            Vertex v3 = p ? ev : eu, v4 = p ? eu : ev;
                            if (v3 == v0 || v3 == v1 || v3 == v2 || v3 == v7) continue;
                            if (v4 == v0 || v4 == v1 || v4 == v2 || v4 == v7) continue;
                            if (c.tilde(v2, v3)) continue;
                            build_A(c, alist, {v0, v1, v2, v3, v4, v7}, v4);
                            build_A(c, blist, {v0, v1, v2, v3, v4, v7}, v7);
                            c.sa.reset(c.n);
                            c.sb.reset(c.n);
                            for (Vertex x : alist) c.sa.insert(x);
                            for (Vertex x : blist) c.sb.insert(x);
                            for (uint64_t fk : s.edge_keys()) {
                                auto [fu, fv] = key_pair(fk);
                                if (s.instance().is_red(fu, fv)) continue;
                                for (int q = 0; q < 2; ++q) {
                                    Vertex v5 = q ? fv : fu, v6 = q ? fu : fv;
                                    if (c.sa.has(v5) || c.sb.has(v6)) continue;
                                    f({v0, v1, v2, v3, v4, v5, v6, v7}, variant);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

Count NaiveEngine::f_easy(const ColoredState& s) {
    Ctx c(s);
    Walk w;
    walk_f_easy(c, w);
    return w.total;
}

Count NaiveEngine::b_easy(const ColoredState& s) {
    Ctx c(s);
    Walk w;
    walk_b_easy(c, w);
    return w.total;
}

Count NaiveEngine::f_type(const ColoredState& s, SwitchType t) {
    Ctx c(s);
    Walk w;
    switch (t) {
        case SwitchType::I: walk_typeI(c, w); break;
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: walk_booster8(c, w, true, t); break;
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: walk_booster8(c, w, false, t); break;
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: walk_IIbc(c, w, false, t); break;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: walk_IIbc(c, w, true, t); break;
    }
    return w.total;
}

Count NaiveEngine::b_class(const ColoredState& s, SwitchClass a) {
    if (a == SwitchClass::B1Plus || a == SwitchClass::B1Minus) {
        return b1_breakdown(s, a, true).total();
    }
    Ctx c(s);
    Walk w;
    walk_inverse(c, w, mirror_class(a));
    Count base = w.total;
    if (a == SwitchClass::CPlus) base += f_type(s, SwitchType::IIIPlus);
    if (a == SwitchClass::CMinus) base += f_type(s, SwitchType::IIIMinus);
    return base;
}

Count NaiveEngine::bhat(const ColoredState& s, const OctagonTuple& oct, SwitchType t) {
    if (gadget_arity(t) == 0) throw Error(Errc::WrongVariant, "bhat: type has no gadgets");
    return bhat_impl(s, oct, t);
}

SwitchMove pick_uniform_move(const ColoredState& s, SwitchType t, RngStream& rng,
                             Count expected_total) {
    if (expected_total == 0) throw Error(Errc::NoValidMove, "no valid move of this type");
    assert(expected_total <= static_cast<Count>(~0ull));
    Count k = rng.uniform_below(static_cast<uint64_t>(expected_total));
    return move_at_index(s, t, k);
}

SwitchMove move_at_index(const ColoredState& s, SwitchType t, Count k) {
    Ctx c(s);
    Walk w;
    w.picking = true;
    w.want = k;
    switch (t) {
        case SwitchType::I: walk_typeI(c, w); break;
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: walk_booster8(c, w, true, t); break;
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: walk_booster8(c, w, false, t); break;
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: walk_IIbc(c, w, false, t); break;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: walk_IIbc(c, w, true, t); break;
    }
    if (!w.done) throw Error(Errc::NoValidMove, "pick walk exhausted before index");
    return w.move;
}

ThreeEdgeTuple pick_uniform_3edge(const ColoredState& s, RngStream& rng, Count expected_total) {
    if (expected_total == 0) throw Error(Errc::NoValidMove, "no valid 3-edge switching");
    Count k = rng.uniform_below(static_cast<uint64_t>(expected_total));
    Ctx c(s);
    Walk w;
    w.picking = true;
    w.want = k;
    walk_f_easy(c, w);
    if (!w.done) throw Error(Errc::NoValidMove, "pick walk exhausted before index");
    return w.easy;
}

}  // namespace dfactor
