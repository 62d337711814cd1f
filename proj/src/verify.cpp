#include "dfactor/verify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "dfactor/bounds.hpp"
#include "dfactor/counting.hpp"

namespace dfactor {

namespace {

struct Tallies {
    Count easy = 0;
    Count typeI_by_class[7] = {};
    Count iia_plus = 0;   // forward IIa moves landing here (class B1+)
    Count iia_minus = 0;
    Count iib = 0, iic = 0;  // forward gadget moves landing here
    Count iii_plus = 0, iii_minus = 0;
};

// enumerate the valid forward moves of a state and distribute them onto
// their targets
void scatter_moves(const HostInstance& inst, const std::vector<uint64_t>& enc,
                   const std::unordered_map<std::string, size_t>& index,
                   std::vector<Tallies>& tally) {
    ColoredState base = state_from_edges(inst, enc);
    auto land = [&](ColoredState& moved) -> Tallies& {
        auto key = encode_edges(moved.canonical_edges());
        auto it = index.find(key);
        if (it == index.end()) throw Error(Errc::UnknownOutcome, "move left the enumeration");
        return tally[it->second];
    };

    const auto& edges = base.edge_keys();
    std::vector<uint64_t> reds = base.red_edge_keys();
    // 3-edge switchings
    for (uint64_t rk : reds) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            ThreeEdgeTuple t{};
            t[0] = o ? rv : ru;
            t[1] = o ? ru : rv;
            for (uint64_t ek : edges) {
                auto [eu, ev] = key_pair(ek);
                for (int p = 0; p < 2; ++p) {
                    t[2] = p ? ev : eu;
                    t[3] = p ? eu : ev;
                    for (uint64_t fk : edges) {
                        auto [fu, fv] = key_pair(fk);
                        for (int q = 0; q < 2; ++q) {
                            t[4] = q ? fv : fu;
                            t[5] = q ? fu : fv;
                            if (!validate_3edge(base, t)) continue;
                            ColoredState moved = base;
                            apply_3edge(moved, t);
                            land(moved).easy += 1;
                        }
                    }
                }
            }
        }
    }

    // Type I switchings (all classes)
    for (uint64_t rk : reds) {
        auto [ru, rv] = key_pair(rk);
        for (int o = 0; o < 2; ++o) {
            OctagonTuple v{};
            v[0] = o ? rv : ru;
            v[1] = o ? ru : rv;
            for (uint64_t ek : edges) {
                auto [eu, ev] = key_pair(ek);
                for (int p = 0; p < 2; ++p) {
                    v[2] = p ? ev : eu;
                    v[3] = p ? eu : ev;
                    if (base.has_edge(v[1], v[2]) || v[2] == v[0] || v[2] == v[1]) continue;
                    if (v[3] == v[0] || v[3] == v[1]) continue;
                    for (uint64_t fk : edges) {
                        auto [fu, fv] = key_pair(fk);
                        for (int p2 = 0; p2 < 2; ++p2) {
                            v[4] = p2 ? fv : fu;
                            v[5] = p2 ? fu : fv;
                            for (uint64_t gk : edges) {
                                auto [gu, gv] = key_pair(gk);
                                for (int q = 0; q < 2; ++q) {
                                    v[6] = q ? gv : gu;
                                    v[7] = q ? gu : gv;
                                    auto cls = validate_typeI(base, v);
                                    if (!cls) continue;
                                    ColoredState moved = base;
                                    apply_typeI(moved, v);
                                    land(moved).typeI_by_class[static_cast<int>(*cls)] += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // IIa and III octagons; the plus and minus types share their move sets
    auto run8 = [&](bool red_anchor) {
        auto anchors = [&](auto&& fn) {
            if (red_anchor) {
                for (uint64_t rk : reds) {
                    auto [ru, rv] = key_pair(rk);
                    fn(ru, rv);
                    fn(rv, ru);
                }
            } else {
                for (uint64_t pk : inst.red_pair_keys()) {
                    auto [pu, pv] = key_pair(pk);
                    if (base.has_edge(pu, pv)) continue;
                    fn(pu, pv);
                    fn(pv, pu);
                }
            }
        };
        anchors([&](Vertex a0, Vertex a1) {
            OctagonTuple v{};
            v[0] = a0;
            v[1] = a1;
            for (Vertex v2 : inst.red_neighbors(v[1])) {
                if (base.has_edge(v[1], v2) || v2 == v[0]) continue;
                v[2] = v2;
                for (Vertex v7 : inst.red_neighbors(v[0])) {
                    if (base.has_edge(v[0], v7) || v7 == v[1]) continue;
                    v[7] = v7;
                    for (Vertex v3 : base.neighbors(v[2])) {
                        v[3] = v3;
                        for (Vertex v6 : base.neighbors(v[7])) {
                            v[6] = v6;
                            for (uint64_t ek : edges) {
                                auto [eu, ev] = key_pair(ek);
                                for (int p = 0; p < 2; ++p) {
                                    v[4] = p ? ev : eu;
                                    v[5] = p ? eu : ev;
                                    if (red_anchor) {
                                        if (!validate_IIa(base, v, SwitchType::IIaPlus)) continue;
                                        ColoredState moved = base;
                                        SwitchMove m{SwitchType::IIaPlus, SwitchClass::B1Plus, v,
                                                     {}};
                                        apply_move(moved, m);
                                        Tallies& t = land(moved);
                                        t.iia_plus += 1;
                                        t.iia_minus += 1;
                                    } else {
                                        if (!validate_III(base, v, SwitchType::IIIPlus)) continue;
                                        Tallies& t = land(base);
                                        t.iii_plus += 1;
                                        t.iii_minus += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        });
    };
    run8(true);
    run8(false);

    // IIb / IIc forward moves enumerated by their walk index; at this
    // enumeration scale (n <= 10) the gadget space is typically empty
    for (bool iic : {false, true}) {
        SwitchType t = iic ? SwitchType::IIcPlus : SwitchType::IIbPlus;
        NaiveEngine eng;
        Count f = eng.f_type(base, t);
        for (Count k = 0; k < f; ++k) {
            SwitchMove m = move_at_index(base, t, k);
            ColoredState moved = base;
            apply_move(moved, m);
            Tallies& tl = land(moved);
            if (iic) tl.iic += 1;
            else tl.iib += 1;
        }
    }
}

}  // namespace

CheckReport bijection_check(const HostInstance& inst, const EnumBudget& budget) {
    CheckReport rep;
    auto all = enumerate_d_regular(inst.n(), inst.d(), budget);
    rep.graphs = all.size();
    std::unordered_map<std::string, size_t> index;
    index.reserve(all.size() * 2);
    for (size_t i = 0; i < all.size(); ++i) index[encode_edges(all[i])] = i;
    std::vector<Tallies> tally(all.size());
    for (const auto& enc : all) scatter_moves(inst, enc, index, tally);

    NaiveEngine eng;
    for (size_t gi = 0; gi < all.size(); ++gi) {
        ColoredState st = state_from_edges(inst, all[gi]);
        const Tallies& t = tally[gi];
        auto expect = [&](Count got, Count want, const char* what) {
            ++rep.comparisons;
            if (got != want) {
                std::ostringstream os;
                os << what << " mismatch at graph " << gi << ": forward " << count_to_string(got)
                   << " vs inverse " << count_to_string(want);
                rep.fail(os.str());
            }
        };
        expect(t.easy, eng.b_easy(st), "3-edge");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::A)],
               eng.b_class(st, SwitchClass::A), "class A");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::B2Plus)],
               eng.b_class(st, SwitchClass::B2Plus), "class B2+");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::B2Minus)],
               eng.b_class(st, SwitchClass::B2Minus), "class B2-");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::CPlus)] + t.iii_plus,
               eng.b_class(st, SwitchClass::CPlus), "class C+");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::CMinus)] + t.iii_minus,
               eng.b_class(st, SwitchClass::CMinus), "class C-");
        // class B1 by variant: Type I lands on variant-I octagons, IIa on
        // variant-IIa octagons; gadget types contribute per completion
        B1Breakdown plus = b1_breakdown(st, SwitchClass::B1Plus, true);
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::B1Plus)], plus.variant_I,
               "B1+ variant I");
        expect(t.iia_plus, plus.variant_IIa, "B1+ variant IIa");
        Count hat_sum_iib = 0, hat_sum_iic = 0;
        for_each_b1_octagon(st, SwitchClass::B1Plus, [&](const OctagonTuple& oct, B1Variant var) {
            if (var == B1Variant::IIb) hat_sum_iib += eng.bhat(st, oct, SwitchType::IIbPlus);
            if (var == B1Variant::IIc) hat_sum_iic += eng.bhat(st, oct, SwitchType::IIcPlus);
        });
        expect(t.iib, hat_sum_iib, "B1+ gadget completions (IIb)");
        expect(t.iic, hat_sum_iic, "B1+ gadget completions (IIc)");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::B1Plus)] + t.iia_plus +
                   plus.variant_IIb + plus.variant_IIc,
               eng.b_class(st, SwitchClass::B1Plus), "class B1+ total");
        expect(t.typeI_by_class[static_cast<int>(SwitchClass::B1Minus)] + t.iia_minus +
                   plus.variant_IIb + plus.variant_IIc,
               eng.b_class(st, SwitchClass::B1Minus), "class B1- total");
    }
    return rep;
}

CheckReport sandwich_check(const HostInstance& inst, const EnumBudget& budget) {
    CheckReport rep;
    long long cap = std::max(i1_easy(inst),
                             inst.regular_complement() ? i1_uniform(inst) : 0LL);
    StrataCatalog catalog(inst, static_cast<int>(cap), budget);
    rep.graphs = catalog.total_size();
    NaiveEngine eng;
    BoundTable analytic = BoundTable::analytic(inst, cap);
    BoundTable oracle = BoundTable::oracle(inst, catalog, eng);

    auto check_le = [&](const Rational& lhs, const Rational& rhs, long long i, const char* what) {
        ++rep.comparisons;
        if (lhs > rhs) {
            std::ostringstream os;
            os << what << " fails at stratum " << i << ": " << lhs.to_string() << " > "
               << rhs.to_string();
            rep.fail(os.str());
        }
    };

    long long easy_cap = std::min(cap, i1_easy(inst));
    for (long long i = 0; i <= easy_cap; ++i) {
        if (catalog.stratum_size(i) == 0) continue;
        Count max_f = 0;
        Count min_b = 0;
        bool first = true;
        for (const auto& enc : catalog.stratum(i)) {
            ColoredState st = state_from_edges(inst, enc);
            Count f = eng.f_easy(st);
            Count b = eng.b_easy(st);
            if (first || f > max_f) max_f = f;
            if (first || b < min_b) min_b = b;
            first = false;
        }
        check_le(Rational(count_to_bigint(max_f)), analytic.easy_upper(i), i, "f_easy <= m_up");
        if (analytic.easy_lower(i) > Rational(0))
            check_le(analytic.easy_lower(i), Rational(count_to_bigint(min_b)), i,
                     "m_low <= b_easy");
    }

    long long uni_cap = inst.regular_complement() ? std::min(cap, i1_uniform(inst)) : -1;
    for (long long i = 0; i <= uni_cap; ++i) {
        if (catalog.stratum_size(i) == 0) continue;
        for (SwitchType ty : kAllTypes) {
            check_le(oracle.upper(ty, i), analytic.upper(ty, i), i, "max f <= m_up");
            if (gadget_arity(ty) > 0) {
                const Rational& a_hat = analytic.hat_lower(ty, i);
                const Rational& o_hat = oracle.hat_lower(ty, i);
                if (a_hat > Rational(0) && o_hat > Rational(0))
                    check_le(a_hat, o_hat, i, "mhat_low <= min bhat");
            }
        }
        for (SwitchClass cl : kAllClasses) {
            const Rational& a_low = analytic.lower(cl, i);
            if (a_low > Rational(0)) check_le(a_low, oracle.lower(cl, i), i, "m_low <= min b");
        }
    }
    return rep;
}

}  // namespace dfactor
