#pragma once

// Hand-written pattern checks and flat tuple enumeration, kept independent
// of the production pattern tables: every condition below is spelled out
// directly so the two implementations can cross-validate each other.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "dfactor/counting.hpp"
#include "dfactor/graph.hpp"

namespace flat {

using dfactor::ColoredState;
using dfactor::Count;
using dfactor::OctagonTuple;
using dfactor::ThreeEdgeTuple;
using dfactor::Vertex;

inline bool edge(const ColoredState& s, Vertex a, Vertex b) { return s.has_edge(a, b); }
inline bool redk(const ColoredState& s, Vertex a, Vertex b) {
    return s.instance().is_red(a, b);
}
inline bool black_edge(const ColoredState& s, Vertex a, Vertex b) {
    return edge(s, a, b) && !redk(s, a, b);
}
inline bool red_edge(const ColoredState& s, Vertex a, Vertex b) {
    return edge(s, a, b) && redk(s, a, b);
}
inline bool red_gap(const ColoredState& s, Vertex a, Vertex b) {
    return !edge(s, a, b) && redk(s, a, b);
}
inline bool black_gap(const ColoredState& s, Vertex a, Vertex b) {
    return a != b && !edge(s, a, b) && !redk(s, a, b);
}

inline bool distinct6_except25(const ThreeEdgeTuple& t) {
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (t[i] == t[j] && !(i == 2 && j == 5)) return false;
    return true;
}

inline bool distinct8_except27(const OctagonTuple& v) {
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (v[i] == v[j] && !(i == 2 && j == 7)) return false;
    return true;
}

inline bool fwd3_valid(const ColoredState& s, const ThreeEdgeTuple& t) {
    return distinct6_except25(t) && red_edge(s, t[0], t[1]) && black_edge(s, t[2], t[3]) &&
           black_edge(s, t[4], t[5]) && black_gap(s, t[1], t[2]) && black_gap(s, t[3], t[4]) &&
           black_gap(s, t[0], t[5]);
}

inline bool inv3_valid(const ColoredState& s, const ThreeEdgeTuple& t) {
    return distinct6_except25(t) && red_gap(s, t[0], t[1]) && black_edge(s, t[1], t[2]) &&
           black_edge(s, t[3], t[4]) && black_edge(s, t[0], t[5]) && black_gap(s, t[2], t[3]) &&
           black_gap(s, t[4], t[5]);
}

// Type I validity with the connector-colour rule; returns the class index
// as a string tag for comparisons
enum class Cls { A, B1p, B1m, B2p, B2m, Cp, Cm };

inline std::optional<Cls> typeI_valid(const ColoredState& s, const OctagonTuple& v) {
    if (!distinct8_except27(v)) return std::nullopt;
    if (!red_edge(s, v[0], v[1])) return std::nullopt;
    if (!edge(s, v[2], v[3]) || !edge(s, v[6], v[7])) return std::nullopt;
    if (!black_edge(s, v[4], v[5])) return std::nullopt;
    if (edge(s, v[1], v[2]) || edge(s, v[3], v[4]) || edge(s, v[5], v[6]) ||
        edge(s, v[0], v[7]))
        return std::nullopt;
    if (redk(s, v[3], v[4]) || redk(s, v[4], v[5]) || redk(s, v[5], v[6])) return std::nullopt;
    bool r12 = redk(s, v[1], v[2]), r23 = redk(s, v[2], v[3]);
    bool r07 = redk(s, v[0], v[7]), r67 = redk(s, v[6], v[7]);
    int reds = r12 + r23 + r07 + r67;
    if (reds == 0) return Cls::A;
    if (reds == 1) {
        if (r12) return Cls::B1p;
        if (r07) return Cls::B1m;
        if (r23) return Cls::B2p;
        return Cls::B2m;
    }
    if (r12 && r23 && !r07 && !r67) return Cls::Cp;
    if (r07 && r67 && !r12 && !r23) return Cls::Cm;
    return std::nullopt;
}

// booster patterns in the plus labelling, written out longhand
inline bool iia_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_edge(s, v[0], v[1]) && red_gap(s, v[1], v[2]) &&
           red_gap(s, v[0], v[7]) && black_edge(s, v[2], v[3]) && black_edge(s, v[6], v[7]) &&
           black_edge(s, v[4], v[5]) && black_gap(s, v[3], v[4]) && black_gap(s, v[5], v[6]);
}

inline bool iii_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_gap(s, v[0], v[1]) && red_gap(s, v[1], v[2]) &&
           red_gap(s, v[0], v[7]) && black_edge(s, v[2], v[3]) && black_edge(s, v[6], v[7]) &&
           black_edge(s, v[4], v[5]) && black_gap(s, v[3], v[4]) && black_gap(s, v[5], v[6]);
}

inline bool gadget_fwd_valid(const ColoredState& s, Vertex a, Vertex b, Vertex y1, Vertex y2,
                             Vertex y3, Vertex y4) {
    return black_edge(s, a, y1) && black_edge(s, y2, y4) && black_edge(s, b, y3) &&
           black_gap(s, y1, y2) && black_gap(s, y3, y4);
}

inline bool iib_context_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_gap(s, v[0], v[1]) && red_gap(s, v[1], v[2]) &&
           black_edge(s, v[0], v[7]) && black_edge(s, v[3], v[4]) &&
           black_edge(s, v[5], v[6]) && black_gap(s, v[2], v[3]) && black_gap(s, v[4], v[5]) &&
           black_gap(s, v[6], v[7]);
}

inline bool iib_valid(const ColoredState& s, const OctagonTuple& v,
                      const std::vector<Vertex>& y) {
    if (y.size() != 8 || !distinct8_except27(v)) return false;
    for (size_t i = 0; i < y.size(); ++i) {
        for (size_t j = i + 1; j < y.size(); ++j)
            if (y[i] == y[j]) return false;
        for (Vertex w : v)
            if (y[i] == w) return false;
    }
    if (!(red_gap(s, v[0], v[1]) && red_gap(s, v[1], v[2]) && black_edge(s, v[0], v[7]) &&
          black_edge(s, v[3], v[4]) && black_edge(s, v[5], v[6]) && black_gap(s, v[2], v[3]) &&
          black_gap(s, v[4], v[5]) && black_gap(s, v[6], v[7])))
        return false;
    return gadget_fwd_valid(s, v[0], v[1], y[0], y[1], y[2], y[3]) &&
           gadget_fwd_valid(s, v[1], v[2], y[4], y[5], y[6], y[7]);
}

inline bool iic_valid(const ColoredState& s, const OctagonTuple& v,
                      const std::vector<Vertex>& y) {
    if (y.size() != 12 || !distinct8_except27(v)) return false;
    for (size_t i = 0; i < y.size(); ++i) {
        for (size_t j = i + 1; j < y.size(); ++j)
            if (y[i] == y[j]) return false;
        for (Vertex w : v)
            if (y[i] == w) return false;
    }
    if (!(red_gap(s, v[0], v[1]) && red_gap(s, v[1], v[2]) && red_gap(s, v[0], v[7]) &&
          black_edge(s, v[3], v[4]) && black_edge(s, v[5], v[6]) && black_gap(s, v[2], v[3]) &&
          black_gap(s, v[4], v[5]) && black_gap(s, v[6], v[7])))
        return false;
    return gadget_fwd_valid(s, v[0], v[1], y[0], y[1], y[2], y[3]) &&
           gadget_fwd_valid(s, v[1], v[2], y[4], y[5], y[6], y[7]) &&
           gadget_fwd_valid(s, v[0], v[7], y[8], y[9], y[10], y[11]);
}

// inverse-side patterns for the class counts
inline bool invA_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_gap(s, v[0], v[1]) && black_edge(s, v[1], v[2]) &&
           black_edge(s, v[0], v[7]) && black_edge(s, v[3], v[4]) && black_edge(s, v[5], v[6]) &&
           black_gap(s, v[2], v[3]) && black_gap(s, v[4], v[5]) && black_gap(s, v[6], v[7]);
}

inline bool invB2_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_gap(s, v[0], v[1]) && red_gap(s, v[2], v[3]) &&
           black_edge(s, v[1], v[2]) && black_edge(s, v[0], v[7]) && black_edge(s, v[3], v[4]) &&
           black_edge(s, v[5], v[6]) && black_gap(s, v[4], v[5]) && black_gap(s, v[6], v[7]);
}

inline bool invC_valid(const ColoredState& s, const OctagonTuple& v) {
    return distinct8_except27(v) && red_gap(s, v[0], v[1]) && red_edge(s, v[1], v[2]) &&
           red_gap(s, v[2], v[3]) && black_edge(s, v[0], v[7]) && black_edge(s, v[3], v[4]) &&
           black_edge(s, v[5], v[6]) && black_gap(s, v[4], v[5]) && black_gap(s, v[6], v[7]);
}

// B1 octagon (plus labelling): variant index 0..3 for I, IIa, IIb, IIc
inline std::optional<int> b1_octagon(const ColoredState& s, const OctagonTuple& v) {
    if (!distinct8_except27(v)) return std::nullopt;
    if (!red_edge(s, v[1], v[2])) return std::nullopt;
    if (!redk(s, v[0], v[1])) return std::nullopt;
    if (!edge(s, v[0], v[7])) return std::nullopt;
    if (!black_edge(s, v[3], v[4]) || !black_edge(s, v[5], v[6])) return std::nullopt;
    if (!black_gap(s, v[2], v[3]) || !black_gap(s, v[4], v[5]) || !black_gap(s, v[6], v[7]))
        return std::nullopt;
    bool present = edge(s, v[0], v[1]);
    bool red07 = redk(s, v[0], v[7]);
    if (!present) return red07 ? 1 : 0;
    return red07 ? 3 : 2;
}

inline bool inv_gadget_valid(const ColoredState& s, Vertex a, Vertex b, Vertex y1, Vertex y2,
                             Vertex y3, Vertex y4) {
    return black_edge(s, y1, y2) && black_edge(s, y3, y4) && black_gap(s, a, y1) &&
           black_gap(s, y2, y4) && black_gap(s, b, y3);
}

// flat enumerations over all vertex tuples (small n only)
template <typename Pred>
Count count6(const ColoredState& s, Pred&& pred) {
    int n = s.n();
    Count total = 0;
    ThreeEdgeTuple t{};
    for (t[0] = 0; t[0] < n; ++t[0])
        for (t[1] = 0; t[1] < n; ++t[1])
            for (t[2] = 0; t[2] < n; ++t[2])
                for (t[3] = 0; t[3] < n; ++t[3])
                    for (t[4] = 0; t[4] < n; ++t[4])
                        for (t[5] = 0; t[5] < n; ++t[5])
                            if (pred(s, t)) ++total;
    return total;
}

template <typename Pred>
Count count8(const ColoredState& s, Pred&& pred) {
    int n = s.n();
    Count total = 0;
    OctagonTuple v{};
    for (v[0] = 0; v[0] < n; ++v[0])
        for (v[1] = 0; v[1] < n; ++v[1]) {
            if (v[1] == v[0]) continue;
            for (v[2] = 0; v[2] < n; ++v[2])
                for (v[3] = 0; v[3] < n; ++v[3])
                    for (v[4] = 0; v[4] < n; ++v[4])
                        for (v[5] = 0; v[5] < n; ++v[5])
                            for (v[6] = 0; v[6] < n; ++v[6])
                                for (v[7] = 0; v[7] < n; ++v[7])
                                    if (pred(s, v)) ++total;
        }
    return total;
}

}  // namespace flat
