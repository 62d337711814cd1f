#pragma once

#include <memory>
#include <optional>

#include "dfactor/bounds.hpp"
#include "dfactor/counting.hpp"
#include "dfactor/regular_gen.hpp"
#include "dfactor/solver.hpp"

namespace dfactor {

enum class Algorithm { Easy, Uniform, Approx };

enum class EngineKind { Naive, Cached };

struct SamplerConfig {
    Algorithm algorithm = Algorithm::Easy;
    BoundProvider provider = BoundProvider::Analytic;
    EngineKind engine = EngineKind::Naive;
    uint64_t restart_budget = 10'000;
    uint64_t step_budget_per_i1 = 1'000;  // steps per attempt: 1000 * (i1 + 1)
    uint64_t proposal_budget = 100'000'000;  // FactorApprox resampling cap
    uint64_t enumeration_budget = 20'000'000;  // oracle-provider strata cap
};

struct RunTelemetry {
    uint64_t restarts = 0;          // failed attempts before the successful one
    uint64_t initial_rejects = 0;   // draws with too many red edges
    uint64_t steps = 0;             // switching steps over all attempts
    uint64_t t_rejections = 0;
    uint64_t f_rejections = 0;
    uint64_t pre_b_rejections = 0;
    uint64_t b_rejections = 0;
    uint64_t proposals = 0;         // tuple proposals (easy / approx)
    uint64_t moves_by_type[9] = {};
    double wall_ms = 0.0;

    void add(const RunTelemetry& o);
};

// all shared read-only pieces a run needs; built once per instance+config
struct SamplerContext {
    const HostInstance* inst = nullptr;
    SamplerConfig config;
    long long i1 = 0;
    BoundTable bounds;
    std::optional<ParameterTable> params;  // uniform only
    // per-stratum type selection as precomputed conditional Bernoulli
    // probabilities, in kAllTypes order
    std::vector<std::vector<std::pair<SwitchType, Rational>>> type_choice;

    static SamplerContext prepare(const HostInstance& inst, const SamplerConfig& config);
};

struct FactorSample {
    std::vector<uint64_t> edges;  // canonical edge keys
    RunTelemetry telemetry;
};

FactorSample factor_easy(const SamplerContext& ctx, RngStream& rng);
FactorSample factor_uniform(const SamplerContext& ctx, RngStream& rng);
FactorSample factor_approx(const SamplerContext& ctx, RngStream& rng);

FactorSample run_sampler(const SamplerContext& ctx, RngStream& rng);

// independent samples from split streams (stream = sample index), optionally
// across threads; output order is deterministic in the seed
std::vector<FactorSample> sample_many(const SamplerContext& ctx, uint64_t count, uint64_t seed,
                                      int jobs = 1);

}  // namespace dfactor
