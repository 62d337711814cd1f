#include "dfactor/switchings.hpp"

#include <algorithm>

namespace dfactor {

namespace {

enum class Req {
    RedEdge,       // edge of G, red in K_n
    BlackEdge,     // edge of G, black in K_n
    AnyEdge,       // edge of G, either colour
    RedNonEdge,    // absent from G, red in K_n
    BlackNonEdge,  // absent from G, black in K_n
    AbsentAny,     // absent from G, either colour
    RedPair,       // red in K_n, presence free
};

struct Pos {
    int a, b;
    Req req;
};

bool check(const ColoredState& s, Vertex u, Vertex v, Req r) {
    switch (r) {
        case Req::RedEdge: return s.is_red_edge(u, v);
        case Req::BlackEdge: return s.has_edge(u, v) && !s.instance().is_red(u, v);
        case Req::AnyEdge: return s.has_edge(u, v);
        case Req::RedNonEdge: return s.is_red_non_edge(u, v);
        case Req::BlackNonEdge: return s.is_black_non_edge(u, v);
        case Req::AbsentAny: return u != v && !s.has_edge(u, v);
        case Req::RedPair: return s.instance().is_red(u, v);
    }
    return false;
}

template <size_t N>
bool check_all(const ColoredState& s, const Vertex* t, const std::array<Pos, N>& ps) {
    for (const Pos& p : ps) {
        if (!check(s, t[p.a], t[p.b], p.req)) return false;
    }
    return true;
}

// all slots pairwise distinct except the single allowed coincidence
bool distinct_except(const Vertex* t, int n, int ca, int cb) {
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (t[i] == t[j] && !(i == ca && j == cb)) return false;
        }
    }
    return true;
}

constexpr std::array<Pos, 6> kFwd3 = {{{0, 1, Req::RedEdge},
                                       {2, 3, Req::BlackEdge},
                                       {4, 5, Req::BlackEdge},
                                       {1, 2, Req::BlackNonEdge},
                                       {3, 4, Req::BlackNonEdge},
                                       {0, 5, Req::BlackNonEdge}}};

constexpr std::array<Pos, 6> kInv3 = {{{0, 1, Req::RedNonEdge},
                                       {1, 2, Req::BlackEdge},
                                       {3, 4, Req::BlackEdge},
                                       {0, 5, Req::BlackEdge},
                                       {2, 3, Req::BlackNonEdge},
                                       {4, 5, Req::BlackNonEdge}}};

constexpr std::array<Pos, 8> kTypeIStruct = {{{0, 1, Req::RedEdge},
                                              {2, 3, Req::AnyEdge},
                                              {4, 5, Req::BlackEdge},
                                              {6, 7, Req::AnyEdge},
                                              {1, 2, Req::AbsentAny},
                                              {3, 4, Req::BlackNonEdge},
                                              {5, 6, Req::BlackNonEdge},
                                              {0, 7, Req::AbsentAny}}};

constexpr std::array<Pos, 8> kIIa = {{{0, 1, Req::RedEdge},
                                      {1, 2, Req::RedNonEdge},
                                      {0, 7, Req::RedNonEdge},
                                      {2, 3, Req::BlackEdge},
                                      {6, 7, Req::BlackEdge},
                                      {4, 5, Req::BlackEdge},
                                      {3, 4, Req::BlackNonEdge},
                                      {5, 6, Req::BlackNonEdge}}};

constexpr std::array<Pos, 8> kIII = {{{0, 1, Req::RedNonEdge},
                                      {1, 2, Req::RedNonEdge},
                                      {0, 7, Req::RedNonEdge},
                                      {2, 3, Req::BlackEdge},
                                      {6, 7, Req::BlackEdge},
                                      {4, 5, Req::BlackEdge},
                                      {3, 4, Req::BlackNonEdge},
                                      {5, 6, Req::BlackNonEdge}}};

constexpr std::array<Pos, 8> kIIbContext = {{{0, 1, Req::RedNonEdge},
                                             {1, 2, Req::RedNonEdge},
                                             {0, 7, Req::BlackEdge},
                                             {3, 4, Req::BlackEdge},
                                             {5, 6, Req::BlackEdge},
                                             {2, 3, Req::BlackNonEdge},
                                             {4, 5, Req::BlackNonEdge},
                                             {6, 7, Req::BlackNonEdge}}};

constexpr std::array<Pos, 8> kIIcContext = {{{0, 1, Req::RedNonEdge},
                                             {1, 2, Req::RedNonEdge},
                                             {0, 7, Req::RedNonEdge},
                                             {3, 4, Req::BlackEdge},
                                             {5, 6, Req::BlackEdge},
                                             {2, 3, Req::BlackNonEdge},
                                             {4, 5, Req::BlackNonEdge},
                                             {6, 7, Req::BlackNonEdge}}};

constexpr std::array<Pos, 8> kB1Octagon = {{{1, 2, Req::RedEdge},
                                            {0, 1, Req::RedPair},
                                            {0, 7, Req::AnyEdge},
                                            {3, 4, Req::BlackEdge},
                                            {5, 6, Req::BlackEdge},
                                            {2, 3, Req::BlackNonEdge},
                                            {4, 5, Req::BlackNonEdge},
                                            {6, 7, Req::BlackNonEdge}}};

// forward gadget on pair (a,b) over extra slots (p,q,r,s):
// alternating 5-path a-p-q-s-r-b; a.p, q.s, b.r are black edges to remove,
// p.q and r.s black non-edges to create
bool forward_gadget_ok(const ColoredState& s, Vertex a, Vertex b, Vertex p, Vertex q, Vertex r,
                       Vertex sv) {
    return check(s, a, p, Req::BlackEdge) && check(s, q, sv, Req::BlackEdge) &&
           check(s, b, r, Req::BlackEdge) && check(s, p, q, Req::BlackNonEdge) &&
           check(s, r, sv, Req::BlackNonEdge);
}

bool is_minus(SwitchType t) {
    return t == SwitchType::IIaMinus || t == SwitchType::IIbMinus || t == SwitchType::IIcMinus ||
           t == SwitchType::IIIMinus;
}

OctagonTuple normalize(const OctagonTuple& v, SwitchType t) {
    return is_minus(t) ? mirror(v) : v;
}

bool gadget_distinct(const OctagonTuple& oct, const std::vector<Vertex>& g) {
    for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = i + 1; j < g.size(); ++j) {
            if (g[i] == g[j]) return false;
        }
        for (Vertex v : oct) {
            if (g[i] == v) return false;
        }
    }
    return true;
}

}  // namespace

const char* switch_type_name(SwitchType t) {
    switch (t) {
        case SwitchType::I: return "I";
        case SwitchType::IIaPlus: return "IIa+";
        case SwitchType::IIaMinus: return "IIa-";
        case SwitchType::IIbPlus: return "IIb+";
        case SwitchType::IIbMinus: return "IIb-";
        case SwitchType::IIcPlus: return "IIc+";
        case SwitchType::IIcMinus: return "IIc-";
        case SwitchType::IIIPlus: return "III+";
        case SwitchType::IIIMinus: return "III-";
    }
    return "?";
}

const char* switch_class_name(SwitchClass c) {
    switch (c) {
        case SwitchClass::A: return "A";
        case SwitchClass::B1Plus: return "B1+";
        case SwitchClass::B1Minus: return "B1-";
        case SwitchClass::B2Plus: return "B2+";
        case SwitchClass::B2Minus: return "B2-";
        case SwitchClass::CPlus: return "C+";
        case SwitchClass::CMinus: return "C-";
    }
    return "?";
}

int stratum_delta(SwitchType type, SwitchClass cls) {
    switch (type) {
        case SwitchType::I:
            switch (cls) {
                case SwitchClass::A: return -1;
                case SwitchClass::B1Plus:
                case SwitchClass::B1Minus: return 0;
                case SwitchClass::B2Plus:
                case SwitchClass::B2Minus: return -2;
                case SwitchClass::CPlus:
                case SwitchClass::CMinus: return -1;
            }
            return 0;
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: return 1;
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: return 2;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: return 3;
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: return 0;
    }
    return 0;
}

int gadget_arity(SwitchType type) {
    switch (type) {
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: return 8;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: return 12;
        default: return 0;
    }
}

bool validate_3edge(const ColoredState& s, const ThreeEdgeTuple& t) {
    int n = s.n();
    for (Vertex v : t) {
        if (v < 0 || v >= n) return false;
    }
    if (!distinct_except(t.data(), 6, 2, 5)) return false;
    return check_all(s, t.data(), kFwd3);
}

bool validate_3edge_inverse(const ColoredState& s, const ThreeEdgeTuple& t) {
    if (!distinct_except(t.data(), 6, 2, 5)) return false;
    return check_all(s, t.data(), kInv3);
}

void apply_3edge(ColoredState& s, const ThreeEdgeTuple& t) {
    if (!validate_3edge(s, t)) throw Error(Errc::InvalidMove, "invalid 3-edge switching");
    s.toggle_set({{t[0], t[1]}, {t[2], t[3]}, {t[4], t[5]}},
                 {{t[1], t[2]}, {t[3], t[4]}, {t[0], t[5]}}, true);
}

namespace detail {

bool octagon_distinct(const OctagonTuple& v) { return distinct_except(v.data(), 8, 2, 7); }

bool typeI_structure_ok(const ColoredState& s, const OctagonTuple& v) {
    if (!octagon_distinct(v)) return false;
    return check_all(s, v.data(), kTypeIStruct);
}

std::optional<SwitchClass> typeI_resolve_class(const ColoredState& s, const OctagonTuple& v) {
    const auto& inst = s.instance();
    bool r12 = inst.is_red(v[1], v[2]);
    bool r23 = inst.is_red(v[2], v[3]);
    bool r07 = inst.is_red(v[0], v[7]);
    bool r67 = inst.is_red(v[6], v[7]);
    int reds = int(r12) + int(r23) + int(r07) + int(r67);
    if (reds == 0) return SwitchClass::A;
    if (reds == 1) {
        if (r12) return SwitchClass::B1Plus;
        if (r07) return SwitchClass::B1Minus;
        if (r23) return SwitchClass::B2Plus;
        return SwitchClass::B2Minus;
    }
    if (reds == 2 && r12 && r23) return SwitchClass::CPlus;
    if (reds == 2 && r07 && r67) return SwitchClass::CMinus;
    return std::nullopt;
}

}  // namespace detail

std::optional<SwitchClass> validate_typeI(const ColoredState& s, const OctagonTuple& v) {
    if (!detail::typeI_structure_ok(s, v)) return std::nullopt;
    return detail::typeI_resolve_class(s, v);
}

void apply_typeI(ColoredState& s, const OctagonTuple& v) {
    if (!validate_typeI(s, v)) throw Error(Errc::InvalidMove, "invalid Type I switching");
    s.toggle_set({{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}},
                 {{v[0], v[7]}, {v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}}, true);
}

bool validate_IIa(const ColoredState& s, const OctagonTuple& v, SwitchType t) {
    if (t != SwitchType::IIaPlus && t != SwitchType::IIaMinus) return false;
    OctagonTuple w = normalize(v, t);
    if (!detail::octagon_distinct(w)) return false;
    return check_all(s, w.data(), kIIa);
}

bool validate_IIb(const ColoredState& s, const OctagonTuple& v, const std::vector<Vertex>& g,
                  SwitchType t) {
    if ((t != SwitchType::IIbPlus && t != SwitchType::IIbMinus) || g.size() != 8) return false;
    OctagonTuple w = normalize(v, t);
    if (!detail::octagon_distinct(w) || !gadget_distinct(w, g)) return false;
    if (!check_all(s, w.data(), kIIbContext)) return false;
    return forward_gadget_ok(s, w[0], w[1], g[0], g[1], g[2], g[3]) &&
           forward_gadget_ok(s, w[1], w[2], g[4], g[5], g[6], g[7]);
}

bool validate_IIc(const ColoredState& s, const OctagonTuple& v, const std::vector<Vertex>& g,
                  SwitchType t) {
    if ((t != SwitchType::IIcPlus && t != SwitchType::IIcMinus) || g.size() != 12) return false;
    OctagonTuple w = normalize(v, t);
    if (!detail::octagon_distinct(w) || !gadget_distinct(w, g)) return false;
    if (!check_all(s, w.data(), kIIcContext)) return false;
    return forward_gadget_ok(s, w[0], w[1], g[0], g[1], g[2], g[3]) &&
           forward_gadget_ok(s, w[1], w[2], g[4], g[5], g[6], g[7]) &&
           forward_gadget_ok(s, w[0], w[7], g[8], g[9], g[10], g[11]);
}

bool validate_III(const ColoredState& s, const OctagonTuple& v, SwitchType t) {
    if (t != SwitchType::IIIPlus && t != SwitchType::IIIMinus) return false;
    OctagonTuple w = normalize(v, t);
    if (!detail::octagon_distinct(w)) return false;
    return check_all(s, w.data(), kIII);
}

std::optional<B1Variant> b1_octagon_variant(const ColoredState& s, const OctagonTuple& v,
                                            SwitchClass cls) {
    OctagonTuple w = cls == SwitchClass::B1Minus ? mirror(v) : v;
    if (!detail::octagon_distinct(w)) return std::nullopt;
    if (!check_all(s, w.data(), kB1Octagon)) return std::nullopt;
    bool present01 = s.has_edge(w[0], w[1]);
    bool red07 = s.instance().is_red(w[0], w[7]);
    if (!present01) return red07 ? B1Variant::IIa : B1Variant::I;
    return red07 ? B1Variant::IIc : B1Variant::IIb;
}

bool validate_inverse_gadget(const ColoredState& s, Vertex a, Vertex b, Vertex p, Vertex q,
                             Vertex r, Vertex sv) {
    return check(s, p, q, Req::BlackEdge) && check(s, r, sv, Req::BlackEdge) &&
           check(s, a, p, Req::BlackNonEdge) && check(s, q, sv, Req::BlackNonEdge) &&
           check(s, b, r, Req::BlackNonEdge);
}

void move_toggles(const SwitchMove& m, std::vector<VertexPair>& remove,
                  std::vector<VertexPair>& add) {
    remove.clear();
    add.clear();
    const OctagonTuple& v = m.oct;
    const std::vector<Vertex>& g = m.gadget;
    switch (m.type) {
        case SwitchType::I:
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus:
            remove = {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
            add = {{v[0], v[7]}, {v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}};
            break;
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus:
            remove = {{v[0], g[0]}, {g[1], g[3]}, {v[1], g[2]},
                      {v[1], g[4]}, {g[5], g[7]}, {v[2], g[6]}};
            add = {{g[0], g[1]}, {g[2], g[3]}, {g[4], g[5]}, {g[6], g[7]},
                   {v[0], v[1]}, {v[1], v[2]}};
            break;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus:
            remove = {{v[0], g[0]}, {g[1], g[3]}, {v[1], g[2]}, {v[1], g[4]}, {g[5], g[7]},
                      {v[2], g[6]}, {v[0], g[8]}, {g[9], g[11]}, {v[7], g[10]}};
            add = {{g[0], g[1]}, {g[2], g[3]}, {g[4], g[5]}, {g[6], g[7]}, {g[8], g[9]},
                   {g[10], g[11]}, {v[0], v[1]}, {v[1], v[2]}, {v[0], v[7]}};
            break;
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus:
            break;
    }
}

void apply_move(ColoredState& s, const SwitchMove& m) {
    bool ok = false;
    // m.oct is plus-normal, so validate against the plus-side type directly
    switch (m.type) {
        case SwitchType::I: ok = validate_typeI(s, m.oct) == m.cls; break;
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: ok = validate_IIa(s, m.oct, SwitchType::IIaPlus); break;
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: ok = validate_IIb(s, m.oct, m.gadget, SwitchType::IIbPlus); break;
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: ok = validate_IIc(s, m.oct, m.gadget, SwitchType::IIcPlus); break;
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: ok = validate_III(s, m.oct, SwitchType::IIIPlus); break;
    }
    if (!ok) throw Error(Errc::InvalidMove, "move does not match its pattern");
    std::vector<VertexPair> rem, add;
    move_toggles(m, rem, add);
    if (!rem.empty()) s.toggle_set(rem, add, true);
}

void apply_move_inverse(ColoredState& s, const SwitchMove& m) {
    std::vector<VertexPair> rem, add;
    move_toggles(m, rem, add);
    if (!rem.empty()) s.toggle_set(add, rem, true);
}

}  // namespace dfactor
