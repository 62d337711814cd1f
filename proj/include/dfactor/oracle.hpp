#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfactor/graph.hpp"
#include "dfactor/stats.hpp"

namespace dfactor {

// Brute-force ground truth for small instances: exhaustive enumeration of
// labeled d-regular graphs, strata, and d-factors.

struct EnumBudget {
    // hard cap on enumerated graphs; enumeration aborts beyond it
    uint64_t max_graphs = 20'000'000;
};

// all labeled simple d-regular graphs on n vertices, each exactly once,
// as canonical sorted edge-key lists
std::vector<std::vector<uint64_t>> enumerate_d_regular(int n, int d,
                                                       const EnumBudget& budget = {});

// all d-regular spanning subgraphs of the host graph (zero red edges)
std::vector<std::vector<uint64_t>> enumerate_d_factors(const HostInstance& inst,
                                                       const EnumBudget& budget = {});

// strata of an instance: graphs grouped by red-edge count
class StrataCatalog {
public:
    StrataCatalog(const HostInstance& inst, int max_stratum, const EnumBudget& budget = {});

    const HostInstance& instance() const { return *inst_; }
    int max_stratum() const { return max_stratum_; }
    // graphs in S_i, canonical encodings
    const std::vector<std::vector<uint64_t>>& stratum(int i) const { return strata_[i]; }
    uint64_t stratum_size(int i) const { return strata_[i].size(); }
    uint64_t total_size() const;

    // index of a graph within the union of strata, or -1 if not catalogued
    long long index_of(const std::vector<uint64_t>& canonical) const;
    // first index of graphs of S_i in the global indexing
    uint64_t stratum_offset(int i) const { return offsets_[i]; }

private:
    const HostInstance* inst_;
    int max_stratum_;
    std::vector<std::vector<std::vector<uint64_t>>> strata_;
    std::vector<uint64_t> offsets_;
    std::unordered_map<std::string, uint64_t> index_;
};

std::string encode_edges(const std::vector<uint64_t>& canonical);
ColoredState state_from_edges(const HostInstance& inst, const std::vector<uint64_t>& keys);

// exact mean of the red-edge count over all d-regular graphs; the check
// compares it with |E(H-bar)| d/(n-1)
struct ExpectationReport {
    Rational enumerated_mean;
    Rational formula;
    bool exact_match = false;
    uint64_t graphs = 0;
};
ExpectationReport expectation_check(const HostInstance& inst, const EnumBudget& budget = {});

// distribution test of a sampler against the enumerated support
struct DistributionReport {
    GofResult gof;
    uint64_t seed = 0;
    bool pass_p = false;  // p >= threshold
};

// draws `samples` outputs from `draw` and bins them over `support`; throws
// UnknownOutcome if a sample falls outside the support
DistributionReport uniformity_test(const std::function<std::vector<uint64_t>()>& draw,
                                   const std::vector<std::vector<uint64_t>>& support,
                                   uint64_t samples, uint64_t seed, double p_threshold = 1e-3);

}  // namespace dfactor
