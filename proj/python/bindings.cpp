// Python bindings: JSON text in, JSON text out; the nclfun package decodes it.

#include "ncl/error.hpp"
#include "ncl/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ncl;

namespace {

Scheme scheme_arg(const std::string& spec, std::uint64_t q) {
    if (spec.rfind("builtin:", 0) == 0) return scheme_from_spec(spec, q);
    return scheme_from_json(json_load(spec));
}

SheafRep job_sheaf(const Json& j) {
    const Scheme x = scheme_from_json(j.at("scheme"));
    return sheaf_from_json(x, j.value("sheaf", Json::object()), j.value("ring", Json()));
}

std::string l_function_json(const std::string& job, int m) {
    const Json j = json_load(job);
    return report_to_json(make_report(job_sheaf(j), m > 0 ? m : j.value("m", 8))).dump();
}

std::string verify_json(const std::string& job, int m, const std::vector<std::string>& methods) {
    const Json j = json_load(job);
    std::vector<std::string> ms = methods;
    if (ms.empty() && j.contains("verify")) ms = j.at("verify").get<std::vector<std::string>>();
    return report_to_json(verify_trace_formula(job_sheaf(j), m > 0 ? m : j.value("m", 8), ms)).dump();
}

std::string zeta_json(const std::vector<std::uint64_t>& counts, int num_deg, int den_deg) {
    const RationalFunction z = num_deg < 0 ? zeta_reconstruct_auto(counts) : zeta_reconstruct(counts, num_deg, den_deg);
    Json num = Json::array(), den = Json::array();
    for (const auto& c : z.num) num.push_back(c.get_str());
    for (const auto& c : z.den) den.push_back(c.get_str());
    return Json{{"num", num}, {"den", den}, {"pretty", z.pretty()}}.dump();
}

std::string k1_json(const std::string& ring_src, const std::string& matrix_src) {
    const RingPtr ring = ring_from_json(json_load(ring_src));
    const Matrix a = matrix_from_json(ring, json_load(matrix_src));
    const K1Class c = k1_of_matrix(a, true);
    Json j{{"class", k1_to_json(c)}, {"rep", elem_to_json(c.rep)},
           {"certificate_replays", k1_certificate_valid(a, *c.certificate, c.rep)}};
    if (ring->is_commutative()) j["det"] = elem_to_json(k1_det(c));
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "L-functions of locally constant sheaves over finite fields";

    static py::exception<Error> exc(m, "NclError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    m.def("point_counts",
          [](const std::string& scheme, std::uint64_t q, int n) { return scheme_point_counts_upto(scheme_arg(scheme, q), n); },
          py::arg("scheme"), py::arg("q") = 0, py::arg("n") = 6);
    m.def("closed_points",
          [](const std::string& scheme, std::uint64_t q, int max_deg) {
              return closed_points_to_json(scheme_arg(scheme, q), max_deg).dump();
          },
          py::arg("scheme"), py::arg("q") = 0, py::arg("max_deg") = 3);
    m.def("zeta_reconstruct", &zeta_json, py::arg("counts"), py::arg("num_deg") = -1, py::arg("den_deg") = -1);
    m.def("l_function", &l_function_json, py::arg("job"), py::arg("m") = 0);
    m.def("verify", &verify_json, py::arg("job"), py::arg("m") = 0, py::arg("methods") = std::vector<std::string>{});
    m.def("k1", &k1_json, py::arg("ring"), py::arg("matrix"));
    m.attr("report_version") = kReportVersion;
}
