// Command-line front end: sampling, verification suites, benchmarking and
// parameter-table inspection for d-factor generation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfactor/io.hpp"
#include "dfactor/oracle.hpp"
#include "dfactor/samplers.hpp"
#include "dfactor/verify.hpp"

using namespace dfactor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // verify suite failed
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBoundGuard = 4;

struct InstanceOpts {
    std::string instance_file;
    std::string forbidden_file;
    int n = 0, d = 0, delta = -1;
    uint64_t seed = 1;
};

HostInstance build_instance(const InstanceOpts& o) {
    if (!o.instance_file.empty()) return load_instance_json(o.instance_file);
    if (!o.forbidden_file.empty()) {
        if (o.n <= 0 || o.d <= 0)
            throw Error(Errc::BadInput, "--forbidden needs --n and --d");
        return load_instance_edge_list(o.forbidden_file, o.n, o.d);
    }
    if (o.n <= 0 || o.d <= 0)
        throw Error(Errc::BadInput, "need --instance, --forbidden, or --n/--d");
    RngStream rng(o.seed, 0xfeedULL);
    return make_random_instance(o.n, o.d, o.delta < 0 ? 0 : o.delta, rng);
}

void add_instance_opts(CLI::App* cmd, InstanceOpts& o) {
    cmd->add_option("--instance", o.instance_file, "instance JSON file");
    cmd->add_option("--forbidden", o.forbidden_file, "forbidden edge list (text)");
    cmd->add_option("--n", o.n, "vertex count");
    cmd->add_option("--d", o.d, "factor degree");
    cmd->add_option("--delta", o.delta, "degree of a generated random forbidden graph");
    cmd->add_option("--seed", o.seed, "random seed");
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::BudgetExhausted: return kExitBudget;
        case Errc::BoundGuard: return kExitBoundGuard;
        default: return kExitBadInput;
    }
}

nlohmann::json telemetry_json(const RunTelemetry& t) {
    nlohmann::json j;
    j["restarts"] = t.restarts;
    j["initial_rejects"] = t.initial_rejects;
    j["steps"] = t.steps;
    j["t_rejections"] = t.t_rejections;
    j["f_rejections"] = t.f_rejections;
    j["pre_b_rejections"] = t.pre_b_rejections;
    j["b_rejections"] = t.b_rejections;
    j["proposals"] = t.proposals;
    j["wall_ms"] = t.wall_ms;
    auto moves = nlohmann::json::object();
    for (SwitchType ty : kAllTypes) {
        uint64_t c = t.moves_by_type[static_cast<int>(ty)];
        if (c) moves[switch_type_name(ty)] = c;
    }
    j["moves_by_type"] = std::move(moves);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"switching-based samplers for d-factors with forbidden edges"};
    app.require_subcommand(1);

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "generate d-factors");
    InstanceOpts s_inst;
    add_instance_opts(sample, s_inst);
    std::string s_alg = "easy", s_provider = "analytic", s_engine = "naive", s_format = "text";
    std::string s_telemetry;
    uint64_t s_samples = 1;
    int s_jobs = 1;
    uint64_t s_restart_budget = 10'000, s_step_budget = 1'000;
    sample->add_option("--algorithm", s_alg, "easy | uniform | approx");
    sample->add_option("--samples", s_samples, "number of factors");
    sample->add_option("--bound-provider", s_provider, "analytic | oracle");
    sample->add_option("--engine", s_engine, "naive | cached");
    sample->add_option("--format", s_format, "text | json");
    sample->add_option("--telemetry", s_telemetry, "write aggregate telemetry JSON here");
    sample->add_option("--jobs", s_jobs, "parallel trajectories");
    sample->add_option("--restart-budget", s_restart_budget, "attempts per sample");
    sample->add_option("--step-budget", s_step_budget, "steps per attempt per stratum");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run an oracle verification suite");
    InstanceOpts v_inst;
    add_instance_opts(verify, v_inst);
    std::string v_suite = "expectation";
    verify->add_option("--suite", v_suite,
                       "expectation | bijection | sandwich | uniformity | solver-fixed-point");
    std::string v_alg = "easy";
    uint64_t v_samples = 20'000;
    verify->add_option("--algorithm", v_alg, "sampler for the uniformity suite");
    verify->add_option("--samples", v_samples, "samples for the uniformity suite");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "wall-clock per sample over a grid of n");
    std::string b_alg = "approx";
    std::vector<long long> b_ns = {1000, 10000, 100000};
    int b_d = 3, b_delta = 3;
    uint64_t b_samples = 10, b_seed = 1;
    bench->add_option("--algorithm", b_alg, "easy | uniform | approx");
    bench->add_option("--n-list", b_ns, "vertex counts");
    bench->add_option("--d", b_d, "factor degree");
    bench->add_option("--delta", b_delta, "forbidden graph degree");
    bench->add_option("--samples", b_samples, "samples per n");
    bench->add_option("--seed", b_seed, "random seed");

    // ---- solve-params ----
    auto* solve = app.add_subcommand("solve-params", "solve and print the parameter table");
    InstanceOpts p_inst;
    add_instance_opts(solve, p_inst);
    std::string p_provider = "analytic", p_csv;
    solve->add_option("--bound-provider", p_provider, "analytic | oracle");
    solve->add_option("--csv", p_csv, "write the table as CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            HostInstance inst = build_instance(s_inst);
            SamplerConfig cfg;
            if (s_alg == "easy") cfg.algorithm = Algorithm::Easy;
            else if (s_alg == "uniform") cfg.algorithm = Algorithm::Uniform;
            else if (s_alg == "approx") cfg.algorithm = Algorithm::Approx;
            else throw Error(Errc::BadInput, "unknown algorithm: " + s_alg);
            if ((cfg.algorithm == Algorithm::Uniform || cfg.algorithm == Algorithm::Approx) &&
                !inst.regular_complement())
                throw Error(Errc::BadInput,
                            "uniform/approx need a forbidden graph that is regular");
            cfg.provider = s_provider == "oracle" ? BoundProvider::Oracle
                                                  : BoundProvider::Analytic;
            cfg.engine = s_engine == "cached" ? EngineKind::Cached : EngineKind::Naive;
            cfg.restart_budget = s_restart_budget;
            cfg.step_budget_per_i1 = s_step_budget;
            SamplerContext ctx = SamplerContext::prepare(inst, cfg);
            auto samples = sample_many(ctx, s_samples, s_inst.seed, s_jobs);
            RunTelemetry agg;
            bool first = true;
            for (const auto& smp : samples) {
                if (s_format == "json") {
                    std::cout << factor_to_json(smp.edges) << '\n';
                } else {
                    if (!first) std::cout << '\n';
                    write_factor_text(std::cout, smp.edges);
                }
                first = false;
                agg.add(smp.telemetry);
            }
            nlohmann::json tj = telemetry_json(agg);
            tj["samples"] = s_samples;
            if (!s_telemetry.empty()) {
                std::ofstream tf(s_telemetry);
                tf << tj.dump(2) << '\n';
            } else {
                std::cerr << tj.dump() << '\n';
            }
            return kExitOk;
        }

        if (*verify) {
            if (v_suite == "solver-fixed-point") {
                HostInstance inst = build_instance(v_inst);
                BoundTable bounds = BoundTable::analytic(inst, i1_uniform(inst));
                ParameterTable table = solve_parameters(bounds);
                // the recursion's fixed-point identity, exact in rationals
                bool ok = true;
                for (long long i = 0; i <= table.i1; ++i) {
                    Rational rhs(1);
                    auto term = [&](long long j, const Rational& low) {
                        if (j > table.i1 || low.is_zero()) return Rational(0);
                        return table.x[j] * table.rho_I[j] * low /
                               bounds.upper(SwitchType::I, j);
                    };
                    rhs += term(i + 1, bounds.lower(SwitchClass::A, i));
                    rhs += Rational(2) * term(i, bounds.lower(SwitchClass::B1Plus, i));
                    rhs += Rational(2) * term(i + 2, bounds.lower(SwitchClass::B2Plus, i));
                    rhs += Rational(2) * term(i + 1, bounds.lower(SwitchClass::CPlus, i));
                    if (rhs != table.x[i]) ok = false;
                }
                SolverReport rep = validate_parameters(table, bounds, inst);
                std::cout << "solver-fixed-point: " << (ok ? "exact" : "MISMATCH")
                          << ", regime checks: " << (rep.all_pass ? "pass" : "fail") << '\n';
                for (const auto& f : rep.failures) std::cout << "  " << f << '\n';
                return ok && rep.all_pass ? kExitOk : kExitFailure;
            }

            HostInstance inst = build_instance(v_inst);
            if (v_suite == "expectation") {
                auto rep = expectation_check(inst);
                std::cout << "expectation: enumerated mean " << rep.enumerated_mean.to_string()
                          << " vs formula " << rep.formula.to_string() << " over " << rep.graphs
                          << " graphs: " << (rep.exact_match ? "exact" : "MISMATCH") << '\n';
                return rep.exact_match ? kExitOk : kExitFailure;
            }
            if (v_suite == "bijection" || v_suite == "sandwich") {
                CheckReport rep = v_suite == "bijection" ? bijection_check(inst)
                                                         : sandwich_check(inst);
                std::cout << v_suite << ": " << rep.comparisons << " comparisons over "
                          << rep.graphs << " graphs: " << (rep.pass ? "pass" : "FAIL") << '\n';
                for (const auto& f : rep.failures) std::cout << "  " << f << '\n';
                return rep.pass ? kExitOk : kExitFailure;
            }
            if (v_suite == "uniformity") {
                SamplerConfig cfg;
                cfg.algorithm = v_alg == "uniform" ? Algorithm::Uniform
                               : v_alg == "approx" ? Algorithm::Approx
                                                   : Algorithm::Easy;
                cfg.provider = BoundProvider::Oracle;
                SamplerContext ctx = SamplerContext::prepare(inst, cfg);
                auto support = enumerate_d_factors(inst);
                uint64_t k = 0;
                auto rep = uniformity_test(
                    [&]() {
                        RngStream rng(v_inst.seed, k++);
                        return run_sampler(ctx, rng).edges;
                    },
                    support, v_samples, v_inst.seed);
                std::cout << "uniformity: support " << rep.gof.support << ", chi2 "
                          << rep.gof.chi_square << ", p " << rep.gof.p_value << ", tv "
                          << rep.gof.tv_distance << (rep.pass_p ? " pass" : " FAIL") << '\n';
                return rep.pass_p ? kExitOk : kExitFailure;
            }
            throw Error(Errc::BadInput, "unknown suite: " + v_suite);
        }

        if (*bench) {
            SamplerConfig cfg;
            if (b_alg == "easy") cfg.algorithm = Algorithm::Easy;
            else if (b_alg == "uniform") cfg.algorithm = Algorithm::Uniform;
            else cfg.algorithm = Algorithm::Approx;
            std::cout << "algorithm,n,d,delta,samples,mean_ms,median_ms,max_ms,restarts\n";
            for (long long n : b_ns) {
                RngStream gen(b_seed, 0xfeedULL);
                HostInstance inst = make_random_instance(static_cast<int>(n), b_d, b_delta, gen);
                SamplerContext ctx = SamplerContext::prepare(inst, cfg);
                std::vector<double> times;
                uint64_t restarts = 0;
                for (uint64_t k = 0; k < b_samples; ++k) {
                    RngStream rng(b_seed, k);
                    auto t0 = std::chrono::steady_clock::now();
                    auto smp = run_sampler(ctx, rng);
                    times.push_back(std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count());
                    restarts += smp.telemetry.restarts;
                }
                std::sort(times.begin(), times.end());
                double mean = 0;
                for (double t : times) mean += t;
                mean /= times.size();
                std::cout << b_alg << ',' << n << ',' << b_d << ',' << b_delta << ','
                          << b_samples << ',' << mean << ',' << times[times.size() / 2] << ','
                          << times.back() << ',' << restarts << '\n';
            }
            return kExitOk;
        }

        if (*solve) {
            HostInstance inst = build_instance(p_inst);
            SamplerConfig cfg;
            cfg.algorithm = Algorithm::Uniform;
            cfg.provider = p_provider == "oracle" ? BoundProvider::Oracle
                                                  : BoundProvider::Analytic;
            SamplerContext ctx = SamplerContext::prepare(inst, cfg);
            std::string csv = ctx.params->to_csv();
            if (!p_csv.empty()) {
                std::ofstream out(p_csv);
                out << csv;
            } else {
                std::cout << csv;
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}
