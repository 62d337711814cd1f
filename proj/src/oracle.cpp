#include "dfactor/oracle.hpp"

#include <algorithm>

namespace dfactor {

namespace {

// Backtracking enumerator over degree-constrained edge sets. The smallest
// vertex with residual degree is completed in one shot: its remaining
// partners are chosen as an increasing sequence among admissible larger
// vertices, so every labeled graph appears exactly once.
struct Enumerator {
    int n, d;
    const HostInstance* forbid = nullptr;  // when set, red pairs are excluded
    uint64_t max_graphs;
    std::vector<int> res;
    std::vector<std::vector<char>> adj;
    std::vector<uint64_t> edges;
    std::vector<std::vector<uint64_t>> out;

    void run() {
        res.assign(n, d);
        adj.assign(n, std::vector<char>(n, 0));
        recurse();
    }

    void recurse() {
        int u = -1;
        for (int v = 0; v < n; ++v) {
            if (res[v] > 0) {
                u = v;
                break;
            }
        }
        if (u < 0) {
            std::vector<uint64_t> g = edges;
            std::sort(g.begin(), g.end());
            out.push_back(std::move(g));
            if (out.size() > max_graphs) throw Error(Errc::BudgetExhausted, "enumeration budget");
            return;
        }
        std::vector<int> cand;
        for (int v = u + 1; v < n; ++v) {
            if (res[v] > 0 && !adj[u][v] && !(forbid && forbid->is_red(u, v))) cand.push_back(v);
        }
        int need = res[u];
        if (static_cast<int>(cand.size()) < need) return;
        std::vector<int> pick;
        choose(u, cand, 0, need, pick);
    }

    void choose(int u, const std::vector<int>& cand, size_t from, int need, std::vector<int>& pick) {
        if (need == 0) {
            for (int v : pick) {
                adj[u][v] = adj[v][u] = 1;
                --res[u];
                --res[v];
                edges.push_back(pair_key(u, v));
            }
            recurse();
            for (int v : pick) {
                adj[u][v] = adj[v][u] = 0;
                ++res[u];
                ++res[v];
                edges.pop_back();
            }
            return;
        }
        for (size_t i = from; i + static_cast<size_t>(need) <= cand.size(); ++i) {
            pick.push_back(cand[i]);
            choose(u, cand, i + 1, need - 1, pick);
            pick.pop_back();
        }
    }
};

}  // namespace

std::vector<std::vector<uint64_t>> enumerate_d_regular(int n, int d, const EnumBudget& budget) {
    if ((static_cast<long long>(n) * d) % 2 != 0) throw Error(Errc::OddProduct, "d*n must be even");
    Enumerator e;
    e.n = n;
    e.d = d;
    e.max_graphs = budget.max_graphs;
    e.run();
    return std::move(e.out);
}

std::vector<std::vector<uint64_t>> enumerate_d_factors(const HostInstance& inst,
                                                       const EnumBudget& budget) {
    Enumerator e;
    e.n = inst.n();
    e.d = inst.d();
    e.forbid = &inst;
    e.max_graphs = budget.max_graphs;
    e.run();
    return std::move(e.out);
}

std::string encode_edges(const std::vector<uint64_t>& canonical) {
    std::string s;
    s.reserve(canonical.size() * 8);
    for (uint64_t k : canonical) {
        for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((k >> (8 * b)) & 0xff));
    }
    return s;
}

ColoredState state_from_edges(const HostInstance& inst, const std::vector<uint64_t>& keys) {
    std::vector<VertexPair> edges;
    edges.reserve(keys.size());
    for (uint64_t k : keys) edges.push_back(key_pair(k));
    return ColoredState(inst, edges);
}

StrataCatalog::StrataCatalog(const HostInstance& inst, int max_stratum, const EnumBudget& budget)
    : inst_(&inst), max_stratum_(max_stratum) {
    strata_.assign(max_stratum + 1, {});
    auto all = enumerate_d_regular(inst.n(), inst.d(), budget);
    for (auto& g : all) {
        int reds = 0;
        for (uint64_t k : g) {
            auto [u, v] = key_pair(k);
            if (inst.is_red(u, v)) ++reds;
        }
        if (reds <= max_stratum) strata_[reds].push_back(std::move(g));
    }
    offsets_.assign(max_stratum + 2, 0);
    uint64_t idx = 0;
    for (int i = 0; i <= max_stratum; ++i) {
        offsets_[i] = idx;
        for (const auto& g : strata_[i]) index_[encode_edges(g)] = idx++;
    }
    offsets_[max_stratum + 1] = idx;
}

uint64_t StrataCatalog::total_size() const { return offsets_.back(); }

long long StrataCatalog::index_of(const std::vector<uint64_t>& canonical) const {
    auto it = index_.find(encode_edges(canonical));
    return it == index_.end() ? -1 : static_cast<long long>(it->second);
}

ExpectationReport expectation_check(const HostInstance& inst, const EnumBudget& budget) {
    ExpectationReport r;
    auto all = enumerate_d_regular(inst.n(), inst.d(), budget);
    BigInt total(0);
    for (const auto& g : all) {
        int reds = 0;
        for (uint64_t k : g) {
            auto [u, v] = key_pair(k);
            if (inst.is_red(u, v)) ++reds;
        }
        total += BigInt(static_cast<long long>(reds));
    }
    r.graphs = all.size();
    r.enumerated_mean = Rational(total, BigInt(static_cast<unsigned long long>(all.size())));
    r.formula = inst.expected_red_edges();
    r.exact_match = r.enumerated_mean == r.formula;
    return r;
}

DistributionReport uniformity_test(const std::function<std::vector<uint64_t>()>& draw,
                                   const std::vector<std::vector<uint64_t>>& support,
                                   uint64_t samples, uint64_t seed, double p_threshold) {
    std::unordered_map<std::string, size_t> idx;
    idx.reserve(support.size() * 2);
    for (size_t i = 0; i < support.size(); ++i) idx[encode_edges(support[i])] = i;
    std::vector<uint64_t> counts(support.size(), 0);
    for (uint64_t s = 0; s < samples; ++s) {
        auto g = draw();
        auto it = idx.find(encode_edges(g));
        if (it == idx.end())
            throw Error(Errc::UnknownOutcome, "sampler output outside enumerated support");
        ++counts[it->second];
    }
    DistributionReport rep;
    rep.gof = uniform_gof(counts);
    rep.seed = seed;
    rep.pass_p = rep.gof.p_value >= p_threshold;
    return rep;
}

}  // namespace dfactor
