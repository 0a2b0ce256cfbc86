#include "knotconc/cli.hpp"
#include "knotconc/document.hpp"
#include "knotconc/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace knotconc;

namespace {

SeifertMatrix to_seifert(const IntMatrix& v) { return SeifertMatrix(v); }

Document doc_from(const std::string& text) { return text.empty() ? builtin_document() : parse_document_text(text); }

} // namespace

PYBIND11_MODULE(_knotconc, m)
{
    m.doc() = "Exact knot concordance invariants";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

    m.def("alexander_poly", [](const IntMatrix& v) { return alexander_poly(to_seifert(v)).str(); },
          py::arg("seifert"), "Normalized Alexander polynomial as a string.");

    m.def(
        "rho0",
        [](const IntMatrix& v, const std::string& tol) {
            CertifiedReal r = rho0(to_seifert(v), parse_rational(tol));
            return py::make_tuple(to_string(r.mid), to_string(r.radius));
        },
        py::arg("seifert"), py::arg("tol") = "1e-9",
        "Integral of the signature function as (midpoint, radius), both exact rationals in string form.");

    m.def("arf", [](const IntMatrix& v) { return arf(to_seifert(v)); }, py::arg("seifert"));

    m.def(
        "derived_depth",
        [](const std::string& word, int rank, int max) {
            DepthResult r = derived_depth(FreeWord::parse(word, rank), max);
            return py::make_tuple(r.depth, r.at_least);
        },
        py::arg("word"), py::arg("rank"), py::arg("max") = kMaxDerivedDepth);

    m.def(
        "fos",
        [](const std::string& target, const std::string& document) {
            Document d = doc_from(document);
            return to_json(first_order_signatures(d.target(target), d.context())).dump();
        },
        py::arg("target"), py::arg("document") = "", "First-order signatures as a JSON string.");

    m.def(
        "verdict",
        [](const std::string& target, const std::string& document) {
            Document d = doc_from(document);
            return to_json(verdict_for(d.target(target), d.context(), d.axioms)).dump();
        },
        py::arg("target"), py::arg("document") = "", "Obstruction verdict as a JSON string.");

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            RunResult r = run(args);
            return py::make_tuple(r.exit_code, r.out, r.err);
        },
        py::arg("args"), "Runs a CLI command; returns (exit_code, stdout, stderr).");
}
