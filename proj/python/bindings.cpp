#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hydroham/run.hpp"

namespace py = pybind11;

namespace {

std::string run_json(const std::string& command, const std::string& manifest_json,
                     int max_jet_order, const std::vector<std::string>& sample_points,
                     std::uint64_t seed) {
    hydroham::Json manifest;
    try {
        manifest = hydroham::Json::parse(manifest_json);
    } catch (const std::exception& e) {
        throw hydroham::ManifestError(std::string("manifest is not valid JSON: ") + e.what());
    }
    hydroham::RunOptions opts;
    opts.max_jet_order = max_jet_order;
    opts.seed = seed;
    if (!sample_points.empty()) {
        opts.sample_points.clear();
        for (const std::string& s : sample_points)
            opts.sample_points.push_back(hydroham::parse_expr(s, 1).constant_value());
    }
    return hydroham::report_to_json(hydroham::run_command(command, manifest, opts));
}

std::string canonical_expr(const std::string& src, int dimension) {
    return hydroham::to_string(hydroham::parse_expr(src, dimension));
}

std::string expr_add(const std::string& a, const std::string& b, int dimension) {
    return hydroham::to_string(hydroham::parse_expr(a, dimension) +
                               hydroham::parse_expr(b, dimension));
}

std::string expr_mul(const std::string& a, const std::string& b, int dimension) {
    return hydroham::to_string(hydroham::parse_expr(a, dimension) *
                               hydroham::parse_expr(b, dimension));
}

std::string expr_partial(const std::string& a, int index, int dimension) {
    if (index < 1 || index > dimension)
        throw hydroham::UnknownVariable("index outside 1..n");
    return hydroham::to_string(hydroham::parse_expr(a, dimension).partial(index - 1));
}

} // namespace

PYBIND11_MODULE(_hydroham, m) {
    m.doc() = "Exact symbolic kernel for generalised (bi-)Hamiltonian structures of "
              "hydrodynamic type; thin bindings over the manifest-driven verifier.";

    py::register_exception<hydroham::ManifestError>(m, "ManifestError");

    m.def("run", &run_json, py::arg("command"), py::arg("manifest_json"),
          py::arg("max_jet_order") = 20,
          py::arg("sample_points") = std::vector<std::string>{},
          py::arg("seed") = std::uint64_t{0},
          "Run a verification command on a JSON manifest; returns the JSON report.");
    m.def("commands", [] { return hydroham::command_names(); },
          "Names of the available verification commands.");
    m.def("canonical_expr", &canonical_expr, py::arg("src"), py::arg("dimension"),
          "Parse an expression and print its canonical form.");
    m.def("expr_add", &expr_add, py::arg("a"), py::arg("b"), py::arg("dimension"));
    m.def("expr_mul", &expr_mul, py::arg("a"), py::arg("b"), py::arg("dimension"));
    m.def("expr_partial", &expr_partial, py::arg("a"), py::arg("index"), py::arg("dimension"));
}
