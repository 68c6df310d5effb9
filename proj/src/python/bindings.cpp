#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simpfib/category.hpp"
#include "simpfib/theorem_b.hpp"
#include "simpfib/verify.hpp"

namespace py = pybind11;
using namespace simpfib;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string dump(const Json& j) { return j.dump(); }

Json parse_doc(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fibrations of simplicial sets: lifting certificates, homology, nerves and Theorem B";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<SimplicialSet>(m, "SimplicialSet")
        .def_static("from_ssx", &parse_sset, py::arg("text"))
        .def("to_ssx", [](const SimplicialSet& x) { return emit_ssx(x); })
        .def_property_readonly("dimension", &SimplicialSet::dimension)
        .def_property_readonly("cell_counts", &SimplicialSet::cell_counts)
        .def_property_readonly("truncation", &SimplicialSet::truncation)
        .def("cell_ids", [](const SimplicialSet& x, int d) {
            std::vector<std::string> ids;
            for (const Cell& c : x.cells(d)) ids.push_back(c.id);
            return ids;
        })
        .def("__eq__", [](const SimplicialSet& a, const SimplicialSet& b) { return a == b; })
        .def("__repr__", [](const SimplicialSet& x) {
            return "<SimplicialSet cells=" + Json(x.cell_counts()).dump() + ">";
        });

    py::class_<SMap>(m, "SMap")
        .def_static("from_ssx", &parse_smap, py::arg("text"))
        .def("to_ssx", [](const SMap& f) { return emit_ssx(f); })
        .def_property_readonly("source", &SMap::source)
        .def_property_readonly("target", &SMap::target);

    m.def("standard_simplex", &standard_simplex, py::arg("n"));
    m.def("boundary", &boundary, py::arg("n"));
    m.def("horn", &horn, py::arg("n"), py::arg("i"));
    m.def("product", [](const SimplicialSet& x, const SimplicialSet& y) { return product(x, y).set(); });
    m.def("product_projection", [](const SimplicialSet& x, const SimplicialSet& y) { return product(x, y).second(); });
    m.def("restrict_over_simplex", [](const SMap& p, const std::string& id) {
        return restrict_over_simplex(p, p.target().parse_name(id)).set();
    });

    m.def("_homology", [](const SimplicialSet& x) { return dump(homology_json(homology(x))); });
    m.def("homology_text", [](const SimplicialSet& x) { return homology_text(homology(x)); });
    m.def("euler_characteristic", [](const SimplicialSet& x) { return euler_characteristic(x).value; });

    m.def("_certify", [](const SMap& p, std::optional<int> cap) {
        return dump(fibration_class_json(p, certify_fibration_class(p, cap.value_or(default_cap(p)))));
    }, py::arg("p"), py::arg("cap") = py::none());
    m.def("_transport", [](const SMap& p, const std::string& edge, bool backward) {
        return dump(transport_json(p, transport_homology(p, p.target().parse_name(edge),
                                                         backward ? Direction::backward : Direction::forward)));
    }, py::arg("p"), py::arg("edge"), py::arg("backward") = false);
    m.def("_realization", [](const SMap& p, std::optional<int> cap) {
        return dump(report_json(realization_fibration_certificate(p, cap.value_or(default_cap(p)))));
    }, py::arg("p"), py::arg("cap") = py::none());
    m.def("_ltg_check", [](const SMap& f, const SMap& p, std::optional<int> cap) {
        return dump(report_json(ltg_check(f, p, cap.value_or(default_cap(p)))));
    }, py::arg("f"), py::arg("p"), py::arg("cap") = py::none());

    m.def("nerve", [](const std::string& cat, int cap) { return nerve(category_from_json(parse_doc(cat)), cap); },
          py::arg("category"), py::arg("cap") = kDefaultNerveCap);
    m.def("nerve_functor", [](const std::string& functor, int cap) {
        return nerve_functor(functor_from_json(parse_doc(functor)), cap);
    }, py::arg("functor"), py::arg("cap") = kDefaultNerveCap);
    m.def("_theorem_b", [](const std::string& functor, int cap) {
        return dump(theorem_b_json(theorem_b_report(functor_from_json(parse_doc(functor)), cap)));
    }, py::arg("functor"), py::arg("cap") = kDefaultNerveCap);
}
