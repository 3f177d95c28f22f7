#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "supergraph/bruteforce.hpp"
#include "supergraph/combinatorics.hpp"
#include "supergraph/errors.hpp"
#include "supergraph/graph_core.hpp"
#include "supergraph/harness.hpp"
#include "supergraph/layer_model.hpp"
#include "supergraph/limits.hpp"
#include "supergraph/motif.hpp"
#include "supergraph/rng.hpp"

namespace py = pybind11;
using namespace supergraph;

namespace {

nlohmann::json to_json(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return nlohmann::json::parse(obj.cast<std::string>());
    const py::object dumps = py::module_::import("json").attr("dumps");
    return nlohmann::json::parse(dumps(obj).cast<std::string>());
}

py::object from_json(const nlohmann::ordered_json& j) {
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

Motif motif_from_any(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) return motif_from_name(spec.cast<std::string>());
    return parse_motif(to_json(spec));
}

}  // namespace

PYBIND11_MODULE(_supergraph, m) {
    m.doc() = "Superposition random graph simulator: motif counts, moment checks, and "
              "limit-regime diagnostics";

    py::register_exception<Error>(m, "SupergraphError", PyExc_RuntimeError);

    py::class_<RandomSource>(m, "RandomSource")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform01", &RandomSource::uniform01)
        .def("next_u64", &RandomSource::next_u64);

    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

    py::class_<Motif>(m, "Motif")
        .def_readonly("vertices", &Motif::vertices)
        .def_readonly("edge_count", &Motif::edge_count)
        .def_readonly("a_f", &Motif::copies_in_complete)
        .def_readonly("automorphism_count", &Motif::automorphism_count)
        .def_readonly("max_subgraph_density", &Motif::max_subgraph_density)
        .def_readonly("two_connected", &Motif::two_connected)
        .def_readonly("balanced", &Motif::balanced)
        .def_readonly("max_degree", &Motif::max_degree)
        .def_property_readonly("edges", [](const Motif& mo) { return mo.edges; })
        .def("name", &Motif::name)
        .def("__repr__", [](const Motif& mo) { return "<Motif " + mo.name() + ">"; });

    m.def(
        "analyze_motif",
        [](int vertices, const std::vector<std::pair<int, int>>& edges) {
            std::vector<Edge> e;
            for (auto [u, v] : edges) e.push_back(make_edge(u, v));
            return analyze_motif(vertices, e);
        },
        py::arg("vertices"), py::arg("edges"), "Analyze a pattern graph (0-indexed edges).");
    m.def("motif_from_name", &motif_from_name, py::arg("name"));

    py::class_<SimpleGraph>(m, "SimpleGraph")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 std::vector<Edge> e;
                 for (auto [u, v] : edges) e.push_back(make_edge(u, v));
                 return SimpleGraph::from_edges(n, e);
             }),
             py::arg("n"), py::arg("edges"))
        .def_readonly("n", &SimpleGraph::n)
        .def("edge_count", &SimpleGraph::edge_count)
        .def("has_edge", &SimpleGraph::has_edge)
        .def("edges", &SimpleGraph::edges);

    m.def("count_in_graph", &count_in_graph, py::arg("motif"), py::arg("host"),
          py::arg("host_budget") = 10000);
    m.def(
        "clustering_coefficient",
        [](const SimpleGraph& g) -> std::optional<double> {
            const auto r = clustering_coefficient(g);
            if (!r.defined) return std::nullopt;
            return r.value;
        },
        py::arg("host"), "Global clustering coefficient, or None when the host has no wedge.");
    m.def(
        "density_functionals",
        [](const Motif& motif, double n, double p) {
            const auto d = density_functionals(motif, n, p);
            return py::make_tuple(d.psi, d.phi, d.m_f);
        },
        py::arg("motif"), py::arg("n"), py::arg("p"), "Returns (psi, phi, m_f).");

    py::class_<LayerTypeLaw>(m, "LayerTypeLaw")
        .def_static("deterministic", &LayerTypeLaw::deterministic, py::arg("x"), py::arg("q"))
        .def_static(
            "from_config", [](const py::object& spec) { return parse_law(to_json(spec)); },
            "Build a law from its config-file JSON form.")
        .def("describe", &LayerTypeLaw::describe)
        .def("__repr__",
             [](const LayerTypeLaw& law) { return "<LayerTypeLaw " + law.describe() + ">"; });

    m.def(
        "sample_layer_type",
        [](const LayerTypeLaw& law, RandomSource& rng) { return sample_layer_type(law, rng); },
        py::arg("law"), py::arg("rng"));
    m.def(
        "mixed_moment",
        [](const LayerTypeLaw& law, double s, double t, std::optional<long long> truncation) {
            MomentSpec spec{s, t};
            spec.truncation = truncation;
            return mixed_moment(law, spec);
        },
        py::arg("law"), py::arg("s"), py::arg("t"), py::arg("truncation") = std::nullopt,
        "E[X^s Q^t]; +inf when the series diverges.");
    m.def("factorial_moment", &factorial_moment, py::arg("law"), py::arg("v"), py::arg("t"),
          py::arg("truncation") = std::nullopt);

    m.def(
        "check_normal_conditions",
        [](const LayerTypeLaw& law, const Motif& motif) {
            return from_json(condition_report_to_json(check_normal_conditions(law, motif)));
        },
        py::arg("law"), py::arg("motif"));
    m.def(
        "check_stable_conditions",
        [](const LayerTypeLaw& law, const Motif& motif, double alpha) {
            return from_json(
                condition_report_to_json(check_stable_conditions(law, motif, alpha)));
        },
        py::arg("law"), py::arg("motif"), py::arg("alpha"));

    py::class_<LayerRealization>(m, "LayerRealization")
        .def_readonly("color", &LayerRealization::color)
        .def_readonly("vertex_set", &LayerRealization::vertex_set)
        .def_readonly("edges", &LayerRealization::edges)
        .def_readonly("x_drawn", &LayerRealization::x_drawn)
        .def_readonly("q_drawn", &LayerRealization::q_drawn);

    py::class_<ColoredMultigraph>(m, "ColoredMultigraph")
        .def_readonly("n", &ColoredMultigraph::n)
        .def_readonly("layers", &ColoredMultigraph::layers)
        .def_property_readonly("flat", [](const ColoredMultigraph& g) { return g.flat; })
        .def("colors_of", &ColoredMultigraph::colors_of, py::arg("u"), py::arg("v"))
        .def("max_layer_overflow", [](const ColoredMultigraph& g) { return max_layer_overflow(g); })
        .def("dump", [](const ColoredMultigraph& g) { return dump_supergraph(g); });

    m.def(
        "generate_layer",
        [](int n, int color, long long x, double q, RandomSource& rng) {
            return generate_layer(n, color, x, q, rng);
        },
        py::arg("n"), py::arg("color"), py::arg("x"), py::arg("q"), py::arg("rng"));
    m.def(
        "generate_supergraph",
        [](int n, int m_layers, const LayerTypeLaw& law, RandomSource& rng) {
            return generate_supergraph(n, m_layers, law, rng);
        },
        py::arg("n"), py::arg("m"), py::arg("law"), py::arg("rng"));

    py::class_<CountReport>(m, "CountReport")
        .def_readonly("n_f", &CountReport::n_f)
        .def_readonly("mono", &CountReport::mono)
        .def_readonly("poly", &CountReport::poly)
        .def_readonly("poly_star", &CountReport::poly_star)
        .def_readonly("s_tilde", &CountReport::s_tilde)
        .def_readonly("per_layer", &CountReport::per_layer)
        .def("invariants_hold", &CountReport::invariants_hold);

    m.def("count_report", &count_report, py::arg("motif"), py::arg("graph"),
          py::arg("host_budget") = 10000);

    py::class_<BStar>(m, "BStar")
        .def_readonly("b", &BStar::b)
        .def_readonly("k_b", &BStar::k_b)
        .def_readonly("delta_b", &BStar::delta_b)
        .def_readonly("b_star", &BStar::b_star)
        .def_readonly("h_b", &BStar::h_b);

    m.def("b_star", &b_star, py::arg("b"));
    m.def(
        "verify_superadditivity",
        [](long long s_max) {
            std::vector<std::pair<long long, long long>> out;
            for (const auto& c : verify_superadditivity(s_max)) out.emplace_back(c.s, c.t);
            return out;
        },
        py::arg("s_max"));
    m.def(
        "verify_clique_partition_bound",
        [](int k) { return verify_clique_partition_bound(k).size(); }, py::arg("k"),
        "Returns the number of counterexamples (0 when the bound holds).");
    m.def("h_f_exact", &h_f_exact, py::arg("motif"), py::arg("n"), py::arg("m"), py::arg("law"));

    m.def("n_f_star", &n_f_star, py::arg("motif"), py::arg("x"), py::arg("q"));
    m.def(
        "sigma_f_squared",
        [](const Motif& motif, const LayerTypeLaw& law, const std::string& method,
           long long mc_draws, std::uint64_t seed) {
            const SigmaMethod sm =
                method == "monte_carlo" ? SigmaMethod::monte_carlo : SigmaMethod::exact_small;
            const auto est = sigma_f_squared(motif, law, sm, mc_draws, seed);
            py::dict d;
            d["value"] = est.value;
            d["std_error"] = est.std_error;
            d["var_n_f_star"] = est.var_n_f_star;
            d["mean_conditional_var"] = est.mean_conditional_var;
            d["finite"] = est.finite;
            d["degenerate"] = est.degenerate;
            return d;
        },
        py::arg("motif"), py::arg("law"), py::arg("method") = "exact_small",
        py::arg("mc_draws") = 20000, py::arg("seed") = 1);
    m.def(
        "sample_positive_stable",
        [](double alpha, double skew_scale, long long count, std::uint64_t seed) {
            RandomSource rng(seed);
            return sample_positive_stable(alpha, skew_scale, count, rng);
        },
        py::arg("alpha"), py::arg("skew_scale"), py::arg("count"), py::arg("seed"));
    m.def("hill_estimator", &hill_estimator, py::arg("samples"), py::arg("k_order"));
    m.def("default_hill_k", &default_hill_k, py::arg("positive_count"));
    m.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"));
    m.def("ks_one_sample_normal", &ks_one_sample_normal, py::arg("samples"));
    m.def("standard_normal_cdf", &standard_normal_cdf, py::arg("x"));
    m.def("standard_normal_quantile", &standard_normal_quantile, py::arg("p"));

    m.def(
        "run_campaign",
        [](const py::object& config, const std::string& out_dir) {
            CampaignConfig c = parse_campaign_config(to_json(config));
            if (!out_dir.empty()) c.output_dir = out_dir;
            const auto result = run_campaign(c);
            if (!c.output_dir.empty()) emit_outputs(result, c.output_dir);
            return from_json(summary_json(result));
        },
        py::arg("config"), py::arg("out_dir") = std::string{},
        "Run a campaign from a config dict or JSON string; returns the summary.");

    m.def("verify_all", [] {
        std::ostringstream log;
        const int failures = verify_all(log);
        return py::make_tuple(failures, log.str());
    });

    m.def(
        "bruteforce_count_copies",
        [](int vertices, const std::vector<std::pair<int, int>>& edges, const SimpleGraph& host) {
            std::vector<Edge> e;
            for (auto [u, v] : edges) e.push_back(make_edge(u, v));
            return bruteforce::count_copies(vertices, e, host);
        },
        py::arg("vertices"), py::arg("edges"), py::arg("host"));
}
