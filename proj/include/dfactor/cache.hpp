#pragma once

#include "dfactor/counting.hpp"

namespace dfactor {

// Per-vertex small-structure counts maintained across toggles: black
// degrees and, for every vertex, the sum of black degrees over its
// neighbourhood in G~ (the graph plus the red non-edges). Everything a
// query needs beyond these is aggregated per query from the state.
struct StructureCache {
    int n = 0;
    Count ordered_black = 0;
    std::vector<int> black_deg;
    std::vector<Count> db;  // sum of black_deg over the G~ neighbourhood

    void build(const ColoredState& s);
    void update(const ColoredState& s, const std::vector<VertexPair>& removed,
                const std::vector<VertexPair>& added);
    bool equals_rebuild(const ColoredState& s) const;
};

// Cache-backed counting engine. The heavy counts (f_I, b_A) aggregate the
// middle edge over precomputed wing tallies instead of enumerating wing
// pairs; the remaining patterns share the anchored loops with cached
// degree data. Gadget counting is shared with the naive engine.
class CachedEngine final : public CountingEngine {
public:
    const char* name() const override { return "cached"; }
    Count f_easy(const ColoredState& s) override;
    Count b_easy(const ColoredState& s) override;
    Count f_type(const ColoredState& s, SwitchType t) override;
    Count b_class(const ColoredState& s, SwitchClass a) override;
    Count bhat(const ColoredState& s, const OctagonTuple& oct, SwitchType t) override;

    void bind(const ColoredState& s) override { cache_.build(s); }
    void on_toggle(const ColoredState& s, const std::vector<VertexPair>& removed,
                   const std::vector<VertexPair>& added) override {
        cache_.update(s, removed, added);
    }

    const StructureCache& cache() const { return cache_; }

private:
    StructureCache cache_;
    NaiveEngine fallback_;

    Count f_typeI_cached(const ColoredState& s);
    Count b_A_cached(const ColoredState& s);
};

}  // namespace dfactor
