#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropmono/commands.hpp"

namespace py = pybind11;
using namespace tropmono;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
Polygon polygon_arg(const std::string& text) { return polygon_from_json(json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_tropmono, m) {
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<CertificationFailure>(m, "CertificationFailure", PyExc_RuntimeError);

  m.def("analyze", [](const std::string& poly) { return dump(analyze_report(polygon_arg(poly))); });
  m.def("subdivide", [](const std::string& poly, std::optional<std::string> heights) {
    std::optional<HeightFunction> h;
    if (heights) h = heights_from_json(json::parse(*heights));
    return dump(subdivide_report(polygon_arg(poly), h));
  }, py::arg("polygon"), py::arg("heights") = py::none());
  m.def("certify", [](const std::string& poly, const std::string& segment) {
    return dump(certify_segment_report(polygon_arg(poly), parse_segment(segment)));
  });
  m.def("check_certificate", [](const std::string& cert) { return dump(check_certificate_report(json::parse(cert))); });
  m.def("snake", [](const std::string& poly) { return dump(snake_report(polygon_arg(poly))); });
  m.def("homology", [](const std::string& poly, const std::vector<std::string>& loops) {
    std::vector<Loop> ls;
    for (auto& l : loops) ls.push_back(parse_loop(l));
    return dump(homology_report(polygon_arg(poly), ls));
  });
  m.def("verdict", [](const std::string& poly, bool all_segments) {
    return dump(verdict_report(polygon_arg(poly), all_segments));
  }, py::arg("polygon"), py::arg("all_segments") = false);
  m.def("graph", [](const std::string& poly, const std::string& family, const std::map<std::string, std::string>& pts,
                    const std::map<std::string, long long>& ints, bool swap) {
    GraphRequest r;
    r.family = family;
    r.swap = swap;
    for (auto& [k, v] : pts) {
      if (k == "kappa") r.kappa = parse_point(v);
      else if (k == "kappa_p") r.kappa_p = parse_point(v);
      else if (k == "xi") r.xi = parse_point(v);
      else if (k == "v") r.v = parse_point(v);
      else if (k == "segment") r.segment = parse_segment(v);
      else throw InvalidInput("unknown graph argument " + k);
    }
    std::map<std::string, i64*> slots{{"a", &r.a}, {"b", &r.b}, {"m", &r.m}, {"l", &r.l}, {"which", &r.which},
                                      {"m1", &r.m1}, {"m2", &r.m2}, {"d", &r.d}};
    for (auto& [k, v] : ints) {
      auto it = slots.find(k);
      if (it == slots.end()) throw InvalidInput("unknown graph argument " + k);
      *it->second = v;
    }
    return dump(graph_report(polygon_arg(poly), r));
  }, py::arg("polygon"), py::arg("family"), py::arg("points") = std::map<std::string, std::string>{},
     py::arg("ints") = std::map<std::string, long long>{}, py::arg("swap") = false);
}
