#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridlab/canonical.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/io.hpp"
#include "gridlab/recognize.hpp"
#include "gridlab/reduction.hpp"
#include "gridlab/synth.hpp"
#include "gridlab/treebound.hpp"

namespace py = pybind11;
using namespace gridlab;

namespace {

py::object fraction(const Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.num(), r.den());
}

Rational rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational(h.cast<std::int64_t>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
        return Rational(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
    }
    return Rational::parse(py::str(h).cast<std::string>());
}

SearchOptions search_options(std::optional<std::uint64_t> nodes, std::optional<double> seconds) {
    SearchOptions o;
    if (nodes) o.node_budget = *nodes;
    if (seconds) o.time_budget = std::chrono::milliseconds(static_cast<long long>(*seconds * 1000));
    return o;
}

py::dict recognition(const RecognitionResult& r) {
    py::dict d;
    d["outcome"] = outcome_name(r.outcome);
    d["rep"] = r.rep ? py::cast(*r.rep) : py::none();
    d["nodes"] = r.nodes;
    d["reason"] = r.reason;
    return d;
}

std::vector<std::string> role_names(const std::vector<Role>& roles) {
    std::vector<std::string> out;
    for (Role r : roles) out.push_back(role_name(r));
    return out;
}

}  // namespace

PYBIND11_MODULE(_gridlab, m) {
    m.doc() = "Exact unit grid intersection graph tools";

    auto base = py::register_exception<Error>(m, "GridlabError");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<UnsatisfiableAssignment>(m, "UnsatisfiableAssignment", base);
    py::register_exception<RoutingFailure>(m, "RoutingFailure", base);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n") = 0)
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 Graph g(n);
                 for (auto [u, v] : edges) g.add_edge(u, v);
                 return g;
             }),
             py::arg("n"), py::arg("edges"))
        .def("add_edge", &Graph::add_edge)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("neighbors", &Graph::neighbors)
        .def_property_readonly("n", &Graph::size)
        .def("edges", [](const Graph& g) {
            std::vector<std::pair<int, int>> out;
            for (auto [u, v] : g.edges()) out.emplace_back(u, v);
            return out;
        })
        .def("__len__", &Graph::size)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.size()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<Representation>(m, "Representation")
        .def(py::init<>())
        .def("add", [](Representation& r, const std::string& o, const py::handle& x, const py::handle& y,
                       const py::object& len) {
                 if (o != "H" && o != "V") throw Error("orientation must be H or V");
                 Rational l = len.is_none() ? Rational(1) : rational(len);
                 if (l != Rational(1)) r.unit_mode = false;
                 r.segments.push_back(o == "H" ? Segment::horizontal(rational(x), rational(y), l)
                                               : Segment::vertical(rational(x), rational(y), l));
             },
             py::arg("orientation"), py::arg("x"), py::arg("y"), py::arg("length") = py::none())
        .def_readwrite("unit_mode", &Representation::unit_mode)
        .def("segments", [](const Representation& r) {
            py::list out;
            for (const auto& s : r.segments) {
                out.append(py::make_tuple(std::string(1, orientation_char(s.orientation)), fraction(s.anchor.x),
                                          fraction(s.anchor.y), fraction(s.length)));
            }
            return out;
        })
        .def("__len__", &Representation::size)
        .def("__eq__", [](const Representation& a, const Representation& b) { return a == b; })
        .def("__repr__", [](const Representation& r) { return "<Representation n=" + std::to_string(r.size()) + ">"; });

    py::class_<SatInstance>(m, "SatInstance")
        .def_readonly("var_count", &SatInstance::var_count)
        .def_readonly("relaxed", &SatInstance::relaxed)
        .def_property_readonly("clauses", [](const SatInstance& inst) {
            std::vector<std::vector<int>> out;
            for (const auto& c : inst.clauses) {
                auto& lits = out.emplace_back();
                for (const auto& l : c) lits.push_back(l.positive ? l.var + 1 : -(l.var + 1));
            }
            return out;
        });

    m.def("parse_graph", &parse_graph);
    m.def("emit_graph", &emit_graph);
    m.def("parse_rep", &parse_rep);
    m.def("emit_rep", &emit_rep);
    m.def("parse_instance", &parse_instance);
    m.def("emit_instance", &emit_instance);

    m.def("girth", [](const Graph& g) -> std::optional<int> {
        int r = girth(g);
        if (r == kInfiniteGirth) return std::nullopt;
        return r;
    });
    m.def("max_degree", &max_degree);
    m.def("validate", &validate);
    m.def("extract_graph", &extract_graph);
    m.def("verify", [](const Representation& rep, const Graph& g) {
        std::vector<std::string> out;
        for (const auto& mm : verify(rep, g).mismatches) out.push_back(describe(mm));
        return out;
    });
    m.def("boundary_size", [](const Representation& rep) { return fraction(boundary_size(rep)); });
    m.def("canonicalize", [](const Representation& rep) { return canonicalize(rep); });
    m.def("check_canonical", [](const Representation& rep) { return check_canonical(rep).violations; });

    m.def("recognize_ugig",
          [](const Graph& g, std::optional<std::uint64_t> nodes, std::optional<double> seconds) {
              RecognitionResult r;
              {
                  py::gil_scoped_release release;
                  r = recognize_ugig(g, search_options(nodes, seconds));
              }
              return recognition(r);
          },
          py::arg("graph"), py::arg("node_budget") = py::none(), py::arg("seconds") = py::none());
    m.def("recognize_gig",
          [](const Graph& g, std::optional<std::uint64_t> nodes, std::optional<double> seconds) {
              RecognitionResult r;
              {
                  py::gil_scoped_release release;
                  r = recognize_gig(g, search_options(nodes, seconds));
              }
              return recognition(r);
          },
          py::arg("graph"), py::arg("node_budget") = py::none(), py::arg("seconds") = py::none());
    m.def("min_boundary",
          [](const Graph& g, const py::handle& cap, std::optional<std::uint64_t> nodes) -> py::object {
              auto r = min_boundary(g, rational(cap), search_options(nodes, std::nullopt));
              if (!r) return py::none();
              return py::make_tuple(fraction(r->size), r->rep);
          },
          py::arg("graph"), py::arg("cap"), py::arg("node_budget") = py::none());

    m.def("gen_tree", [](int n) { return gen_tree(n).graph; });
    m.def("empirical_bound", [](int n, double seconds) {
        BoundEstimate b;
        {
            py::gil_scoped_release release;
            b = empirical_bound(n, search_options(std::nullopt, seconds));
        }
        py::dict d;
        d["lower"] = fraction(b.lower);
        d["upper"] = b.upper ? fraction(*b.upper) : py::none();
        d["exact"] = b.exact;
        d["witness"] = b.witness ? py::cast(*b.witness) : py::none();
        return d;
    }, py::arg("n"), py::arg("seconds") = 10.0);

    m.def("clause_ordering_feasible", [](int t) { return clause_ordering_feasible(OrderingTriple::from_index(t)).feasible; });
    m.def("satisfies", &satisfies);
    m.def("build_gf", [](const SatInstance& inst, int girth, const std::string& variant) {
        auto gf = build_gf(inst, girth, parse_variant(variant));
        return py::make_tuple(gf.graph, role_names(gf.roles));
    }, py::arg("instance"), py::arg("girth"), py::arg("variant") = "ugig5");
    m.def("synth", [](const SatInstance& inst, int girth, const std::vector<bool>& assignment) {
        auto gf = build_gf(inst, girth, Variant::UGIG5);
        py::gil_scoped_release release;
        return synth_representation(gf, assignment);
    }, py::arg("instance"), py::arg("girth"), py::arg("assignment"));

    m.def("render_svg", [](const Representation& rep, const std::optional<std::vector<std::string>>& roles,
                           const py::handle& scale) {
        std::vector<Role> rs;
        if (roles) for (const auto& r : *roles) rs.push_back(parse_role(r));
        return render_svg(rep, rs, {rational(scale)});
    }, py::arg("rep"), py::arg("roles") = py::none(), py::arg("scale") = 64);
}
