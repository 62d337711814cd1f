#include "dfactor/samplers.hpp"

#include <chrono>
#include <thread>

#include "dfactor/cache.hpp"
#include "dfactor/oracle.hpp"

namespace dfactor {

namespace {

using Clock = std::chrono::steady_clock;

std::shared_ptr<CountingEngine> make_engine(EngineKind kind) {
    if (kind == EngineKind::Cached) return std::make_shared<CachedEngine>();
    return std::make_shared<NaiveEngine>();
}

VertexPair ordered_from_key(uint64_t key, bool flip) {
    auto [u, v] = key_pair(key);
    return flip ? VertexPair{v, u} : VertexPair{u, v};
}

VertexPair sample_ordered_edge(const ColoredState& s, RngStream& rng) {
    const auto& keys = s.edge_keys();
    uint64_t r = rng.uniform_below(keys.size() * 2);
    return ordered_from_key(keys[r >> 1], r & 1);
}

VertexPair sample_ordered_red_edge(const ColoredState& s, RngStream& rng) {
    const auto& keys = s.red_edge_keys();
    uint64_t r = rng.uniform_below(keys.size() * 2);
    return ordered_from_key(keys[r >> 1], r & 1);
}

VertexPair sample_ordered_red_pair(const HostInstance& inst, RngStream& rng) {
    const auto& keys = inst.red_pair_keys();
    uint64_t r = rng.uniform_below(keys.size() * 2);
    return ordered_from_key(keys[r >> 1], r & 1);
}

Vertex sample_neighbor(const ColoredState& s, Vertex v, RngStream& rng) {
    const auto& nb = s.neighbors(v);
    return nb[rng.uniform_below(nb.size())];
}

Vertex sample_red_neighbor(const HostInstance& inst, Vertex v, RngStream& rng) {
    const auto& nb = inst.red_neighbors(v);
    return nb[rng.uniform_below(nb.size())];
}

// exact acceptance with probability num/den (both nonnegative, num <= den)
bool accept_ratio(RngStream& rng, const Rational& num, const Rational& den) {
    return rng.bernoulli(num / den);
}

Rational count_rational(Count c) { return Rational(count_to_bigint(c)); }

// one proposal from the booster generation space whose size is the type's
// upper-bound parameter; returns a validated move or nothing (= f-rejection)
std::optional<SwitchMove> propose_booster(const ColoredState& s, SwitchType t, RngStream& rng) {
    const HostInstance& inst = s.instance();
    OctagonTuple v{};
    SwitchMove m;
    m.type = t;
    switch (t) {
        case SwitchType::IIaPlus:
        case SwitchType::IIaMinus: {
            auto [a, b] = sample_ordered_red_edge(s, rng);
            v[0] = a;
            v[1] = b;
            v[2] = sample_red_neighbor(inst, v[1], rng);
            v[7] = sample_red_neighbor(inst, v[0], rng);
            v[3] = sample_neighbor(s, v[2], rng);
            v[6] = sample_neighbor(s, v[7], rng);
            auto [x, y] = sample_ordered_edge(s, rng);
            v[4] = x;
            v[5] = y;
            if (!validate_IIa(s, v, SwitchType::IIaPlus)) return std::nullopt;
            m.cls = t == SwitchType::IIaPlus ? SwitchClass::B1Plus : SwitchClass::B1Minus;
            m.oct = v;
            return m;
        }
        case SwitchType::IIIPlus:
        case SwitchType::IIIMinus: {
            auto [a, b] = sample_ordered_red_pair(inst, rng);
            v[0] = a;
            v[1] = b;
            v[2] = sample_red_neighbor(inst, v[1], rng);
            v[7] = sample_red_neighbor(inst, v[0], rng);
            v[3] = sample_neighbor(s, v[2], rng);
            v[6] = sample_neighbor(s, v[7], rng);
            auto [x, y] = sample_ordered_edge(s, rng);
            v[4] = x;
            v[5] = y;
            if (!validate_III(s, v, SwitchType::IIIPlus)) return std::nullopt;
            m.cls = t == SwitchType::IIIPlus ? SwitchClass::CPlus : SwitchClass::CMinus;
            m.oct = v;
            return m;
        }
        case SwitchType::IIbPlus:
        case SwitchType::IIbMinus: {
            auto [a, b] = sample_ordered_red_pair(inst, rng);
            v[0] = a;
            v[1] = b;
            v[2] = sample_red_neighbor(inst, v[1], rng);
            v[7] = sample_neighbor(s, v[0], rng);
            auto [x3, x4] = sample_ordered_edge(s, rng);
            v[3] = x3;
            v[4] = x4;
            auto [x5, x6] = sample_ordered_edge(s, rng);
            v[5] = x5;
            v[6] = x6;
            std::vector<Vertex> g(8);
            g[0] = sample_neighbor(s, v[0], rng);
            g[2] = sample_neighbor(s, v[1], rng);
            auto [y2, y4] = sample_ordered_edge(s, rng);
            g[1] = y2;
            g[3] = y4;
            g[4] = sample_neighbor(s, v[1], rng);
            g[6] = sample_neighbor(s, v[2], rng);
            auto [y6, y8] = sample_ordered_edge(s, rng);
            g[5] = y6;
            g[7] = y8;
            if (!validate_IIb(s, v, g, SwitchType::IIbPlus)) return std::nullopt;
            m.cls = t == SwitchType::IIbPlus ? SwitchClass::B1Plus : SwitchClass::B1Minus;
            m.oct = v;
            m.gadget = std::move(g);
            return m;
        }
        case SwitchType::IIcPlus:
        case SwitchType::IIcMinus: {
            auto [a, b] = sample_ordered_red_pair(inst, rng);
            v[0] = a;
            v[1] = b;
            v[2] = sample_red_neighbor(inst, v[1], rng);
            v[7] = sample_red_neighbor(inst, v[0], rng);
            auto [x3, x4] = sample_ordered_edge(s, rng);
            v[3] = x3;
            v[4] = x4;
            auto [x5, x6] = sample_ordered_edge(s, rng);
            v[5] = x5;
            v[6] = x6;
            std::vector<Vertex> g(12);
            Vertex anchors[3][2] = {{v[0], v[1]}, {v[1], v[2]}, {v[0], v[7]}};
            for (int k = 0; k < 3; ++k) {
                g[4 * k] = sample_neighbor(s, anchors[k][0], rng);
                g[4 * k + 2] = sample_neighbor(s, anchors[k][1], rng);
                auto [p, q] = sample_ordered_edge(s, rng);
                g[4 * k + 1] = p;
                g[4 * k + 3] = q;
            }
            if (!validate_IIc(s, v, g, SwitchType::IIcPlus)) return std::nullopt;
            m.cls = t == SwitchType::IIcPlus ? SwitchClass::B1Plus : SwitchClass::B1Minus;
            m.oct = v;
            m.gadget = std::move(g);
            return m;
        }
        default: break;
    }
    throw Error(Errc::InvalidMove, "propose_booster: not a booster type");
}

// type selection by sequential conditional Bernoulli draws; exact, and a
// t-rejection happens when nothing is chosen
std::optional<SwitchType> choose_type(
    const std::vector<std::pair<SwitchType, Rational>>& conditional, RngStream& rng) {
    for (const auto& [t, p] : conditional) {
        if (rng.bernoulli(p)) return t;
    }
    return std::nullopt;
}

struct GuardFailure : Error {
    using Error::Error;
};

void guard_lower(const BoundTable& bounds, const Rational& m_low, Count actual,
                 const char* what) {
    Rational b = count_rational(actual);
    if (bounds.provider() == BoundProvider::Analytic) {
        if (m_low.sign() <= 0)
            throw Error(Errc::BoundGuard, std::string("analytic lower bound nonpositive for ") +
                                              what + "; retry with the oracle bound provider");
        if (m_low > b)
            throw Error(Errc::BoundGuard, std::string("analytic lower bound exceeds the exact"
                                                      " count for ") +
                                              what + "; retry with the oracle bound provider");
    } else {
        if (m_low > b) throw Error(Errc::BoundGuard, std::string("oracle bound broken for ") + what);
    }
}

}  // namespace

void RunTelemetry::add(const RunTelemetry& o) {
    restarts += o.restarts;
    initial_rejects += o.initial_rejects;
    steps += o.steps;
    t_rejections += o.t_rejections;
    f_rejections += o.f_rejections;
    pre_b_rejections += o.pre_b_rejections;
    b_rejections += o.b_rejections;
    proposals += o.proposals;
    for (int k = 0; k < 9; ++k) moves_by_type[k] += o.moves_by_type[k];
    wall_ms += o.wall_ms;
}

SamplerContext SamplerContext::prepare(const HostInstance& inst, const SamplerConfig& config) {
    SamplerContext ctx;
    ctx.inst = &inst;
    ctx.config = config;
    if (config.algorithm == Algorithm::Easy) {
        ctx.i1 = i1_easy(inst);
    } else {
        ctx.i1 = i1_uniform(inst);
    }

    if (config.provider == BoundProvider::Oracle) {
        NaiveEngine oracle_engine;
        StrataCatalog catalog(inst, static_cast<int>(ctx.i1),
                              EnumBudget{config.enumeration_budget});
        ctx.bounds = BoundTable::oracle(inst, catalog, oracle_engine);
    } else {
        ctx.bounds = BoundTable::analytic(inst, ctx.i1);
    }

    if (config.algorithm == Algorithm::Uniform) {
        if (ctx.bounds.eps() < Rational(1)) {
            try {
                ctx.params = solve_parameters(ctx.bounds);
            } catch (const Error&) {
                if (config.provider == BoundProvider::Analytic) throw;
            }
        } else if (config.provider == BoundProvider::Analytic) {
            throw Error(Errc::SolverInvariantViolated,
                        "epsilon >= 1: instance outside the analytic regime");
        }
        if (!ctx.params && config.provider == BoundProvider::Oracle) {
            // the paper's epsilon is asymptotic; on enumerable instances any
            // epsilon in (0,1) preserves uniformity, so fall back to fixed
            // candidates until the solved table is valid
            for (long long den : {8, 4, 2}) {
                for (long long num = 1; num < den; ++num) {
                    ctx.bounds.set_eps(Rational(BigInt(num), BigInt(den)));
                    try {
                        ctx.params = solve_parameters(ctx.bounds);
                        break;
                    } catch (const Error&) {
                    }
                }
                if (ctx.params) break;
            }
            if (!ctx.params)
                throw Error(Errc::SolverInvariantViolated,
                            "no epsilon yields a valid parameter table for this instance");
        }
    }
    if (ctx.params) {
        ctx.type_choice.resize(ctx.i1 + 1);
        for (long long i = 0; i <= ctx.i1; ++i) {
            Rational remaining(1);
            for (SwitchType t : kAllTypes) {
                Rational p = ctx.params->rho(t, i);
                if (p.is_zero()) continue;
                ctx.type_choice[i].push_back({t, p / remaining});
                remaining -= p;
            }
        }
    }
    return ctx;
}

FactorSample factor_easy(const SamplerContext& ctx, RngStream& rng) {
    auto t0 = Clock::now();
    const HostInstance& inst = *ctx.inst;
    auto engine = make_engine(ctx.config.engine);
    RunTelemetry tel;
    const long long i1 = ctx.i1;
    const uint64_t step_budget = ctx.config.step_budget_per_i1 * (i1 + 1);

    for (uint64_t attempt = 0; attempt < ctx.config.restart_budget; ++attempt) {
        ColoredState s = pairing_sample(inst, rng);
        if (s.stratum() > i1) {
            ++tel.initial_rejects;
            ++tel.restarts;
            continue;
        }
        engine->bind(s);
        bool rejected = false;
        uint64_t steps_this_attempt = 0;
        while (s.stratum() > 0) {
            if (++steps_this_attempt > step_budget)
                throw Error(Errc::BudgetExhausted, "factor_easy: step budget exhausted");
            ++tel.steps;
            ++tel.proposals;
            long long i = s.stratum();
            auto [v0, v1] = sample_ordered_red_edge(s, rng);
            auto [v2, v3] = sample_ordered_edge(s, rng);
            auto [v4, v5] = sample_ordered_edge(s, rng);
            ThreeEdgeTuple tuple = {v0, v1, v2, v3, v4, v5};
            if (!validate_3edge(s, tuple)) {
                ++tel.f_rejections;
                rejected = true;
                break;
            }
            std::vector<VertexPair> rem = {{v0, v1}, {v2, v3}, {v4, v5}};
            std::vector<VertexPair> add = {{v1, v2}, {v3, v4}, {v0, v5}};
            s.toggle_set(rem, add, true);
            engine->on_toggle(s, rem, add);
            Count b = engine->b_easy(s);
            const Rational& m_low = ctx.bounds.easy_lower(i - 1);
            guard_lower(ctx.bounds, m_low, b, "b_easy");
            if (!accept_ratio(rng, m_low, count_rational(b))) {
                ++tel.b_rejections;
                rejected = true;
                break;
            }
        }
        if (!rejected) {
            if (!s.is_d_factor())
                throw Error(Errc::InvalidMove, "factor_easy produced a non-factor");
            tel.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            return {s.canonical_edges(), tel};
        }
        ++tel.restarts;
    }
    throw Error(Errc::BudgetExhausted, "factor_easy: restart budget exhausted");
}

FactorSample factor_uniform(const SamplerContext& ctx, RngStream& rng) {
    auto t0 = Clock::now();
    const HostInstance& inst = *ctx.inst;
    if (!inst.regular_complement())
        throw Error(Errc::NotRegularComplement, "factor_uniform needs a regular forbidden graph");
    if (!ctx.params)
        throw Error(Errc::SolverInvariantViolated, "factor_uniform: no parameter table");
    auto engine = make_engine(ctx.config.engine);
    RunTelemetry tel;
    const long long i1 = ctx.i1;
    const uint64_t step_budget = ctx.config.step_budget_per_i1 * (i1 + 1);
    const bool proposals_ok = ctx.bounds.upper_is_space_size();

    for (uint64_t attempt = 0; attempt < ctx.config.restart_budget; ++attempt) {
        ColoredState s = pairing_sample(inst, rng);
        if (s.stratum() > i1) {
            ++tel.initial_rejects;
            ++tel.restarts;
            continue;
        }
        engine->bind(s);
        bool rejected = false;
        bool output = false;
        uint64_t steps_this_attempt = 0;
        while (!rejected && !output) {
            if (++steps_this_attempt > step_budget)
                throw Error(Errc::BudgetExhausted, "factor_uniform: step budget exhausted");
            ++tel.steps;
            long long i = s.stratum();
            auto type = choose_type(ctx.type_choice[i], rng);
            if (!type) {
                ++tel.t_rejections;
                rejected = true;
                break;
            }
            SwitchType tau = *type;
            if (i == 0 && tau == SwitchType::I) {
                output = true;
                break;
            }
            // obtain one move of type tau, each valid move with overall
            // probability rho/upper-bound
            std::optional<SwitchMove> move;
            if (tau == SwitchType::I || !proposals_ok) {
                Count f = engine->f_type(s, tau);
                const Rational& m_up = ctx.bounds.upper(tau, i);
                if (f == 0) {
                    ++tel.f_rejections;
                    rejected = true;
                    break;
                }
                Rational fr = count_rational(f);
                if (fr > m_up)
                    throw Error(Errc::BoundGuard, "forward count exceeds the upper bound");
                if (!rng.bernoulli(fr / m_up)) {
                    ++tel.f_rejections;
                    rejected = true;
                    break;
                }
                move = pick_uniform_move(s, tau, rng, f);
            } else {
                move = propose_booster(s, tau, rng);
                if (!move) {
                    ++tel.f_rejections;
                    rejected = true;
                    break;
                }
            }
            std::vector<VertexPair> rem, add;
            move_toggles(*move, rem, add);
            if (!rem.empty()) {
                s.toggle_set(rem, add, true);
                engine->on_toggle(s, rem, add);
            }
            long long inew = s.stratum();
            if (inew != i + stratum_delta(move->type, move->cls))
                throw Error(Errc::InvalidMove, "stratum delta does not match the move class");
            ++tel.moves_by_type[static_cast<int>(move->type)];

            if (gadget_arity(move->type) > 0) {
                Count hat = engine->bhat(s, move->oct, move->type);
                const Rational& m_hat = ctx.bounds.hat_lower(move->type, inew);
                guard_lower(ctx.bounds, m_hat, hat, "bhat");
                if (!accept_ratio(rng, m_hat, count_rational(hat))) {
                    ++tel.pre_b_rejections;
                    rejected = true;
                    break;
                }
            }

            Count b = engine->b_class(s, move->cls);
            const Rational& m_low = ctx.bounds.lower(move->cls, inew);
            if (ctx.bounds.provider() == BoundProvider::Oracle && m_low.is_zero()) {
                ++tel.b_rejections;
                rejected = true;
                break;
            }
            guard_lower(ctx.bounds, m_low, b, switch_class_name(move->cls));
            if (!accept_ratio(rng, m_low, count_rational(b))) {
                ++tel.b_rejections;
                rejected = true;
                break;
            }
        }
        if (output) {
            if (!s.is_d_factor())
                throw Error(Errc::InvalidMove, "factor_uniform produced a non-factor");
            tel.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            return {s.canonical_edges(), tel};
        }
        ++tel.restarts;
    }
    throw Error(Errc::BudgetExhausted, "factor_uniform: restart budget exhausted");
}

FactorSample factor_approx(const SamplerContext& ctx, RngStream& rng) {
    auto t0 = Clock::now();
    const HostInstance& inst = *ctx.inst;
    if (!inst.regular_complement())
        throw Error(Errc::NotRegularComplement, "factor_approx needs a regular forbidden graph");
    RunTelemetry tel;
    const long long i1 = ctx.i1;

    // conditioned initial draw: resample the generator, no global restarts
    InitialStats init;
    ColoredState s = initial_state(inst, static_cast<int>(i1), rng, ctx.config.restart_budget,
                                   &init);
    tel.initial_rejects = init.draws - 1;

    uint64_t proposals = 0, since_move = 0;
    // a state with no valid switching loops forever; outside the theorem's
    // regime (tiny n) such dead ends are reachable, so after a long streak
    // of failed proposals the exact forward count decides between waiting
    // and redrawing the initial graph
    NaiveEngine dead_end_probe;
    const uint64_t stuck_cap =
        std::max<uint64_t>(10'000, 10 * static_cast<uint64_t>(inst.d()) * inst.n());
    const uint64_t step_budget = ctx.config.step_budget_per_i1 * (i1 + 1);
    while (s.stratum() > 0) {
        if (++proposals > ctx.config.proposal_budget)
            throw Error(Errc::BudgetExhausted, "factor_approx: proposal budget exhausted");
        if (++since_move > stuck_cap) {
            since_move = 0;
            if (dead_end_probe.f_type(s, SwitchType::I) == 0) {
                s = initial_state(inst, static_cast<int>(i1), rng, ctx.config.restart_budget,
                                  &init);
                ++tel.restarts;
            }
            continue;
        }
        ++tel.proposals;
        auto [v0, v1] = sample_ordered_red_edge(s, rng);
        auto [v2, v3] = sample_ordered_edge(s, rng);
        auto [v4, v5] = sample_ordered_edge(s, rng);
        auto [v6, v7] = sample_ordered_edge(s, rng);
        OctagonTuple oct = {v0, v1, v2, v3, v4, v5, v6, v7};
        auto cls = validate_typeI(s, oct);
        if (!cls) continue;
        apply_typeI(s, oct);
        since_move = 0;
        ++tel.steps;
        ++tel.moves_by_type[static_cast<int>(SwitchType::I)];
        if (tel.steps > step_budget)
            throw Error(Errc::BudgetExhausted, "factor_approx: step budget exhausted");
    }
    if (!s.is_d_factor()) throw Error(Errc::InvalidMove, "factor_approx produced a non-factor");
    tel.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return {s.canonical_edges(), tel};
}

FactorSample run_sampler(const SamplerContext& ctx, RngStream& rng) {
    switch (ctx.config.algorithm) {
        case Algorithm::Easy: return factor_easy(ctx, rng);
        case Algorithm::Uniform: return factor_uniform(ctx, rng);
        case Algorithm::Approx: return factor_approx(ctx, rng);
    }
    throw Error(Errc::BadInput, "unknown algorithm");
}

std::vector<FactorSample> sample_many(const SamplerContext& ctx, uint64_t count, uint64_t seed,
                                      int jobs) {
    std::vector<FactorSample> out(count);
    if (jobs <= 1) {
        for (uint64_t k = 0; k < count; ++k) {
            RngStream rng(seed, k);
            out[k] = run_sampler(ctx, rng);
        }
        return out;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    for (int t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t]() {
            try {
                for (uint64_t k = t; k < count; k += jobs) {
                    RngStream rng(seed, k);
                    out[k] = run_sampler(ctx, rng);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace dfactor
