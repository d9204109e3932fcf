#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tightcycle/certificate.hpp"
#include "tightcycle/constructions.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/fractional.hpp"
#include "tightcycle/io.hpp"
#include "tightcycle/perm.hpp"
#include "tightcycle/search.hpp"
#include "tightcycle/thresholds.hpp"

namespace py = pybind11;
using namespace tightcycle;

namespace {

// Rationals cross the boundary as fractions.Fraction; anything whose str() parses is accepted.
py::object to_fraction(const mpq_class& q) {
  return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

mpq_class from_py_rational(const py::handle& obj) { return parse_rational(py::str(obj).cast<std::string>()); }

py::list tiling_pieces(const Tiling& t) {
  py::list out;
  for (const auto& p : t.pieces) out.append(p.image);
  return out;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::handle& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tight cycles in uniform hypergraphs: constructions, exact search, thresholds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ExtensionError>(m, "ExtensionError", PyExc_RuntimeError);
  py::register_exception<ResourceExhausted>(m, "ResourceExhausted", PyExc_RuntimeError);

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init<int, std::size_t, std::vector<Edge>>(), py::arg("k"), py::arg("n"), py::arg("edges"))
      .def_property_readonly("k", &Hypergraph::k)
      .def_property_readonly("n", &Hypergraph::n)
      .def_property_readonly("edges", &Hypergraph::edges)
      .def("num_edges", &Hypergraph::num_edges)
      .def("has_edge", [](const Hypergraph& h, const std::vector<Vertex>& e) { return h.has_edge(e); })
      .def("degree", [](const Hypergraph& h, const std::vector<Vertex>& s) { return degree(h, s); })
      .def("min_degree", [](const Hypergraph& h, int level) {
        const DegreeProfile p = min_degree(h, level);
        return py::make_tuple(p.min_degree, p.argmin_set);
      })
      .def("to_hg", [](const Hypergraph& h) { return format_hg(h); })
      .def_static("from_hg", [](const std::string& text) { return parse_hg(text); })
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; })
      .def("__repr__", [](const Hypergraph& h) {
        return "<Hypergraph k=" + std::to_string(h.k()) + " n=" + std::to_string(h.n()) +
               " edges=" + std::to_string(h.num_edges()) + ">";
      });

  m.def("admissible", [](int k, int s) { return admissible(k, s).admissible; }, py::arg("k"), py::arg("s"));
  m.def("h0", &h0, py::arg("k"), py::arg("a"), py::arg("b"));
  m.def("complete_partite", [](int k, const std::vector<std::size_t>& sizes) {
    const PartitionedHost host = complete_partite(k, sizes);
    return py::make_tuple(host.graph, host.classes.classes());
  }, py::arg("k"), py::arg("sizes"));
  m.def("tiling_barrier", [](int k, int s, std::size_t n) {
    const BarrierGraph b = tiling_barrier(k, s, n);
    py::dict parts;
    parts["a"] = b.a;
    parts["b"] = b.b;
    parts["t"] = b.t;
    return py::make_tuple(b.graph, parts);
  }, py::arg("k"), py::arg("s"), py::arg("n"));
  m.def("tile_family", [](int k, int s) {
    const TileFamily f = tile_family(k, s);
    py::dict d;
    d["a"] = f.a;
    d["ell"] = f.ell;
    d["f_s"] = f.f_s.graph;
    d["e_s"] = f.e_s.graph;
    d["spanning_cycle"] = f.spanning_cycle;
    return d;
  }, py::arg("k"), py::arg("s"));

  m.def("is_tight_cycle", [](const Hypergraph& h, const std::vector<Vertex>& seq) { return is_tight_cycle(h, seq); });
  m.def("find_cycle_through", [](const Hypergraph& h, Vertex v, int s, std::uint64_t budget) -> std::optional<std::vector<Vertex>> {
    const auto c = find_cycle_through(h, v, s, budget);
    if (!c) return std::nullopt;
    return c->vertices;
  }, py::arg("h"), py::arg("v"), py::arg("s"), py::arg("budget") = kDefaultNodeBudget);
  m.def("enumerate_cycles", [](const Hypergraph& h, int s, std::uint64_t budget) {
    std::vector<std::vector<Vertex>> out;
    for (const auto& c : enumerate_cycles(h, s, budget)) out.push_back(c.vertices);
    return out;
  }, py::arg("h"), py::arg("s"), py::arg("budget") = kDefaultNodeBudget);
  m.def("uncovered_vertices", [](const Hypergraph& h, int s, int jobs, std::uint64_t budget) {
    return covering_check(h, s, budget, jobs).uncovered.members();
  }, py::arg("h"), py::arg("s"), py::arg("jobs") = 1, py::arg("budget") = kDefaultNodeBudget);
  m.def("perfect_tiling", [](const Hypergraph& h, int s, std::uint64_t budget) -> py::object {
    const auto t = perfect_tiling(h, s, budget);
    if (!t) return py::none();
    return tiling_pieces(*t);
  }, py::arg("h"), py::arg("s"), py::arg("budget") = kDefaultNodeBudget);
  m.def("max_tiling", [](const Hypergraph& h, int s, std::uint64_t budget) {
    return tiling_pieces(max_tiling(h, s, budget));
  }, py::arg("h"), py::arg("s"), py::arg("budget") = kDefaultNodeBudget);

  m.def("phi_star", [](const Hypergraph& h, int k, int s, const py::object& c, std::uint64_t budget) {
    const TileFamily fam = tile_family(k, s);
    const PhiStarResult r = solve_phi_star(h, fam, from_py_rational(c), budget);
    return py::make_tuple(to_fraction(r.phi_star), r.optimal);
  }, py::arg("h"), py::arg("k"), py::arg("s"), py::arg("c"), py::arg("budget") = kDefaultNodeBudget);

  m.def("brute_threshold", [](const std::string& kind, int k, int s, std::size_t n, int i, bool pruned) {
    ThresholdOptions opt;
    opt.pruned = pruned;
    const ThresholdResult r = brute_threshold(parse_threshold_kind(kind), k, s, n, i, opt);
    return py::make_tuple(r.value, r.witness);
  }, py::arg("kind"), py::arg("k"), py::arg("s"), py::arg("n"), py::arg("i"), py::arg("pruned") = true);

  m.def("aux_bipartite", [](const Hypergraph& h, const Edge& x, int s, const py::object& gamma) {
    const AuxReport r = bipartite_aux(h, x, s, from_py_rational(gamma));
    py::dict d;
    d["hypothesis_holds"] = r.hypothesis_holds;
    d["bipartite"] = r.bipartite;
    d["edges"] = r.graph_edges;
    d["threshold"] = to_fraction(r.threshold);
    return d;
  }, py::arg("h"), py::arg("x"), py::arg("s"), py::arg("gamma"));

  m.def("format_cycles", [](const std::vector<int>& image) { return format_cycles(Perm(image)); });
  m.def("parse_cycles", [](const std::string& text, int k) { return parse_cycles(text, k).image(); });

  m.def("cycle_certificate", [](const Hypergraph& h, int s, Vertex v) {
    return json_to_py(cycle_certificate(h, s, {{v, find_cycle_through(h, v, s)}}));
  }, py::arg("h"), py::arg("s"), py::arg("v"));
  m.def("verify_certificate", [](const py::object& cert, const std::optional<Hypergraph>& graph) {
    const VerifyOutcome r = verify_certificate(py_to_json(cert), graph ? &*graph : nullptr);
    return py::make_tuple(r.valid, r.error);
  }, py::arg("cert"), py::arg("graph") = std::nullopt);
}
