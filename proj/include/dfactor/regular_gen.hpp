#pragma once

#include "dfactor/graph.hpp"
#include "dfactor/rng.hpp"

namespace dfactor {

// Configuration-model pairing with full restart on any loop or multi-edge:
// exactly uniform over simple d-regular graphs on n labeled vertices.
// Stands in for the REG / REG* generators of the source framework.
struct PairingStats {
    uint64_t pairings_tried = 0;  // full pairings drawn, including rejected ones
};

ColoredState pairing_sample(const HostInstance& inst, RngStream& rng,
                            PairingStats* stats = nullptr, uint64_t pairing_budget = 1'000'000);

// edge-list variant for callers that manage their own instance lifetime
std::vector<VertexPair> pairing_edges(int n, int d, RngStream& rng, PairingStats* stats = nullptr,
                                      uint64_t pairing_budget = 1'000'000);

// uniform d-regular graph conditioned on red_count <= i_max, by repeated
// independent pairing draws
struct InitialStats {
    uint64_t draws = 0;  // accepted pairings inspected for the red-count condition
    PairingStats pairing;
};

ColoredState initial_state(const HostInstance& inst, int i_max, RngStream& rng,
                           uint64_t restart_budget = 10'000, InitialStats* stats = nullptr);

}  // namespace dfactor
