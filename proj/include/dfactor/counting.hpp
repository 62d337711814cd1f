#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dfactor/rng.hpp"
#include "dfactor/switchings.hpp"

namespace dfactor {

// exact counts; u128 covers every bound in the supported n range
using Count = unsigned __int128;

std::string count_to_string(Count c);
BigInt count_to_bigint(Count c);

// Exact switching counts over a state. Two implementations ship: a naive
// engine that recomputes from scratch, and a cache-backed engine that
// maintains per-vertex structure counts across toggles.
class CountingEngine {
public:
    virtual ~CountingEngine() = default;
    virtual const char* name() const = 0;

    virtual Count f_easy(const ColoredState& s) = 0;
    virtual Count b_easy(const ColoredState& s) = 0;
    virtual Count f_type(const ColoredState& s, SwitchType t) = 0;
    virtual Count b_class(const ColoredState& s, SwitchClass a) = 0;

    // gadget completions of an inverse IIb/IIc switching on this octagon
    // (octagon in plus-normal form)
    virtual Count bhat(const ColoredState& s, const OctagonTuple& oct, SwitchType t) = 0;

    // rebuild any internal structures for a new state
    virtual void bind(const ColoredState&) {}
    // notify that the state was updated by removing/adding the given pairs
    virtual void on_toggle(const ColoredState&, const std::vector<VertexPair>&,
                           const std::vector<VertexPair>&) {}
};

class NaiveEngine final : public CountingEngine {
public:
    const char* name() const override { return "naive"; }
    Count f_easy(const ColoredState& s) override;
    Count b_easy(const ColoredState& s) override;
    Count f_type(const ColoredState& s, SwitchType t) override;
    Count b_class(const ColoredState& s, SwitchClass a) override;
    Count bhat(const ColoredState& s, const OctagonTuple& oct, SwitchType t) override;
};

// number of pattern octagons per B1 variant; IIb/IIc variants optionally
// restricted to octagons with at least one gadget completion
struct B1Breakdown {
    Count variant_I = 0;
    Count variant_IIa = 0;
    Count variant_IIb = 0;
    Count variant_IIc = 0;
    Count total() const { return variant_I + variant_IIa + variant_IIb + variant_IIc; }
};
B1Breakdown b1_breakdown(const ColoredState& s, SwitchClass cls, bool require_completable);

// visit every pattern octagon (plus-normal coordinates) with its variant;
// enumeration-scale instances only
void for_each_b1_octagon(const ColoredState& s, SwitchClass cls,
                         const std::function<void(const OctagonTuple&, B1Variant)>& f);

// the k-th valid move of the given type in the deterministic walk order
SwitchMove move_at_index(const ColoredState& s, SwitchType t, Count k);

// uniformly random valid move of the given type; `expected_total` must equal
// the engine's f_type value, which the index walk verifies as it goes
SwitchMove pick_uniform_move(const ColoredState& s, SwitchType t, RngStream& rng,
                             Count expected_total);

ThreeEdgeTuple pick_uniform_3edge(const ColoredState& s, RngStream& rng, Count expected_total);

}  // namespace dfactor
