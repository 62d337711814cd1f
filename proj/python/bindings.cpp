// Python bindings for the main operations: instance handling, the three
// samplers, the parameter solver, and the small-instance oracles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dfactor/oracle.hpp"
#include "dfactor/samplers.hpp"
#include "dfactor/solver.hpp"
#include "dfactor/verify.hpp"

namespace py = pybind11;
using namespace dfactor;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList keys_to_pairs(const std::vector<uint64_t>& keys) {
    EdgeList out;
    out.reserve(keys.size());
    for (uint64_t k : keys) out.push_back(key_pair(k));
    return out;
}

SamplerConfig make_config(const std::string& algorithm, const std::string& provider,
                          const std::string& engine) {
    SamplerConfig cfg;
    if (algorithm == "easy") cfg.algorithm = Algorithm::Easy;
    else if (algorithm == "uniform") cfg.algorithm = Algorithm::Uniform;
    else if (algorithm == "approx") cfg.algorithm = Algorithm::Approx;
    else throw Error(Errc::BadInput, "unknown algorithm: " + algorithm);
    cfg.provider = provider == "oracle" ? BoundProvider::Oracle : BoundProvider::Analytic;
    cfg.engine = engine == "cached" ? EngineKind::Cached : EngineKind::Naive;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_dfactor, m) {
    m.doc() = "switching-based samplers for d-factors with forbidden edges";

    py::register_exception<Error>(m, "DfactorError");

    py::class_<HostInstance>(m, "HostInstance")
        .def(py::init([](int n, int d, const EdgeList& forbidden) {
                 std::vector<VertexPair> pairs;
                 for (auto [u, v] : forbidden) pairs.push_back({u, v});
                 return HostInstance(n, d, pairs);
             }),
             py::arg("n"), py::arg("d"), py::arg("forbidden") = EdgeList{})
        .def_property_readonly("n", &HostInstance::n)
        .def_property_readonly("d", &HostInstance::d)
        .def_property_readonly("delta", &HostInstance::delta)
        .def_property_readonly("m_red_total", &HostInstance::m_red_total)
        .def_property_readonly("regular_complement", &HostInstance::regular_complement)
        .def("expected_red_edges",
             [](const HostInstance& inst) { return inst.expected_red_edges().to_string(); });

    m.def(
        "sample",
        [](const HostInstance& inst, const std::string& algorithm, uint64_t samples,
           uint64_t seed, const std::string& provider, const std::string& engine, int jobs) {
            SamplerConfig cfg = make_config(algorithm, provider, engine);
            SamplerContext ctx = SamplerContext::prepare(inst, cfg);
            auto out = sample_many(ctx, samples, seed, jobs);
            std::vector<EdgeList> factors;
            factors.reserve(out.size());
            for (const auto& smp : out) factors.push_back(keys_to_pairs(smp.edges));
            return factors;
        },
        py::arg("instance"), py::arg("algorithm") = "easy", py::arg("samples") = 1,
        py::arg("seed") = 1, py::arg("provider") = "analytic", py::arg("engine") = "naive",
        py::arg("jobs") = 1);

    m.def(
        "solve_params",
        [](const HostInstance& inst, const std::string& provider) {
            SamplerConfig cfg = make_config("uniform", provider, "naive");
            SamplerContext ctx = SamplerContext::prepare(inst, cfg);
            py::dict out;
            out["i1"] = ctx.params->i1;
            out["eps"] = ctx.params->eps.to_string();
            py::list xs, rho_i, rho_iii;
            for (long long i = 0; i <= ctx.params->i1; ++i) {
                xs.append(ctx.params->x[i].to_string());
                rho_i.append(ctx.params->rho_I[i].to_string());
                rho_iii.append(ctx.params->rho_III[i].to_string());
            }
            out["x"] = xs;
            out["rho_I"] = rho_i;
            out["rho_III"] = rho_iii;
            out["csv"] = ctx.params->to_csv();
            return out;
        },
        py::arg("instance"), py::arg("provider") = "analytic");

    m.def(
        "enumerate_d_factors",
        [](const HostInstance& inst) {
            auto all = enumerate_d_factors(inst);
            std::vector<EdgeList> out;
            out.reserve(all.size());
            for (const auto& g : all) out.push_back(keys_to_pairs(g));
            return out;
        },
        py::arg("instance"));

    m.def(
        "expectation_check",
        [](const HostInstance& inst) {
            auto rep = expectation_check(inst);
            py::dict out;
            out["enumerated_mean"] = rep.enumerated_mean.to_string();
            out["formula"] = rep.formula.to_string();
            out["exact_match"] = rep.exact_match;
            out["graphs"] = rep.graphs;
            return out;
        },
        py::arg("instance"));

    m.def(
        "bijection_check",
        [](const HostInstance& inst) {
            auto rep = bijection_check(inst);
            py::dict out;
            out["pass"] = rep.pass;
            out["graphs"] = rep.graphs;
            out["comparisons"] = rep.comparisons;
            out["failures"] = rep.failures;
            return out;
        },
        py::arg("instance"));
}
