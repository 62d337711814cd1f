#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dfactor/graph.hpp"

namespace dfactor {

// Types of switchings the uniform sampler chooses among (the set Gamma),
// plus the 3-edge switching used by the easy sampler.
enum class SwitchType { I, IIaPlus, IIaMinus, IIbPlus, IIbMinus, IIcPlus, IIcMinus, IIIPlus, IIIMinus };

enum class SwitchClass { A, B1Plus, B1Minus, B2Plus, B2Minus, CPlus, CMinus };

// Octagon left behind by a class-B1 switching; which booster type can have
// produced it depends on the presence of v0v1 and the colour of v0v7.
enum class B1Variant { I, IIa, IIb, IIc };

constexpr std::array<SwitchType, 9> kAllTypes = {
    SwitchType::I,        SwitchType::IIaPlus, SwitchType::IIaMinus,
    SwitchType::IIbPlus,  SwitchType::IIbMinus, SwitchType::IIcPlus,
    SwitchType::IIcMinus, SwitchType::IIIPlus, SwitchType::IIIMinus};

constexpr std::array<SwitchClass, 7> kAllClasses = {
    SwitchClass::A,      SwitchClass::B1Plus, SwitchClass::B1Minus, SwitchClass::B2Plus,
    SwitchClass::B2Minus, SwitchClass::CPlus,  SwitchClass::CMinus};

const char* switch_type_name(SwitchType t);
const char* switch_class_name(SwitchClass c);

// stratum change caused by performing a switching of this type/class
int stratum_delta(SwitchType type, SwitchClass cls);

// gadget vertices carried by a type (0, 8 or 12)
int gadget_arity(SwitchType type);

using ThreeEdgeTuple = std::array<Vertex, 6>;
using OctagonTuple = std::array<Vertex, 8>;

// vertex labelling swap between the "+" and "-" classes
constexpr std::array<int, 8> kMirror = {1, 0, 7, 6, 5, 4, 3, 2};

inline OctagonTuple mirror(const OctagonTuple& v) {
    OctagonTuple w;
    for (int i = 0; i < 8; ++i) w[i] = v[kMirror[i]];
    return w;
}

// A validated switching ready to apply. Octagon (and gadget) vertices are
// stored in plus-normal form: minus-type moves hold the mirrored tuple, so
// one set of pattern tables drives everything.
struct SwitchMove {
    SwitchType type = SwitchType::I;
    SwitchClass cls = SwitchClass::A;
    OctagonTuple oct{};
    std::vector<Vertex> gadget;  // 8 (IIb) or 12 (IIc) extra vertices
};

// -- 3-edge switching (FactorEasy) --
bool validate_3edge(const ColoredState& s, const ThreeEdgeTuple& t);
bool validate_3edge_inverse(const ColoredState& s, const ThreeEdgeTuple& t);
// removes v0v1, v2v3, v4v5; adds v1v2, v3v4, v0v5
void apply_3edge(ColoredState& s, const ThreeEdgeTuple& t);

// -- Type I (4-edge switching) --
// returns the resolved class, or nullopt when the 8-tuple is invalid
std::optional<SwitchClass> validate_typeI(const ColoredState& s, const OctagonTuple& v);
void apply_typeI(ColoredState& s, const OctagonTuple& v);

// -- boosters --
// tuples are given in user coordinates for the stated type; the minus
// patterns are the plus ones under the kMirror relabelling
bool validate_IIa(const ColoredState& s, const OctagonTuple& v, SwitchType t);
bool validate_IIb(const ColoredState& s, const OctagonTuple& v, const std::vector<Vertex>& gadget8,
                  SwitchType t);
bool validate_IIc(const ColoredState& s, const OctagonTuple& v, const std::vector<Vertex>& gadget12,
                  SwitchType t);
bool validate_III(const ColoredState& s, const OctagonTuple& v, SwitchType t);

// classify a B1 octagon present in the graph (plus-normal coordinates for
// B1Plus; pass cls=B1Minus to read the tuple in the mirrored labelling)
std::optional<B1Variant> b1_octagon_variant(const ColoredState& s, const OctagonTuple& v,
                                            SwitchClass cls = SwitchClass::B1Plus);

// inverse gadget wiring present in a graph that contains the octagon: the
// pair (a,b) is joined by an alternating 5-path over (p,q,s,r)
bool validate_inverse_gadget(const ColoredState& s, Vertex a, Vertex b, Vertex p, Vertex q,
                             Vertex r, Vertex sv);

// toggle sets for a validated move (III moves toggle nothing)
void move_toggles(const SwitchMove& m, std::vector<VertexPair>& remove,
                  std::vector<VertexPair>& add);

// validate + apply; throws InvalidMove when the tuple does not match the
// type's pattern in the current state
void apply_move(ColoredState& s, const SwitchMove& m);

// inverse direction, used by tests and the bijection oracle
void apply_move_inverse(ColoredState& s, const SwitchMove& m);

namespace detail {
// structural Type I validity without the connector-colour rule; exposed for
// the counting module
bool typeI_structure_ok(const ColoredState& s, const OctagonTuple& v);
std::optional<SwitchClass> typeI_resolve_class(const ColoredState& s, const OctagonTuple& v);
bool octagon_distinct(const OctagonTuple& v);  // all distinct except v2==v7
}  // namespace detail

}  // namespace dfactor
