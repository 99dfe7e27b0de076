#include <pybind11/pybind11.h>

#include "chiral/obstructions.hpp"
#include "chiral/weedcert.hpp"

namespace py = pybind11;
using namespace chiral;
using nlohmann::json;

namespace {

// Everything crosses the boundary as JSON text; the package decodes it.
std::string info(const std::string& plus, const std::string& minus) {
  const auto p = parse_pair(plus, minus);
  json j = spectral_profile(p).to_json();
  j["warnings"] = p.warnings;
  return j.dump();
}

std::string obstruct(const std::string& plus, const std::string& minus) {
  return run_all(parse_pair(plus, minus)).to_json().dump();
}

std::string chirality_of(const std::string& plus, const std::string& minus) {
  const auto p = parse_pair(plus, minus);
  return chirality(p, branch_data(p)).to_json().dump();
}

std::string weed(const std::string& spec) { return eliminate_weed(WeedSpec::from_json(json::parse(spec))).to_json().dump(); }

py::tuple check(const std::string& cert) {
  const auto r = check_elimination(json::parse(cert));
  return py::make_tuple(r.ok, r.message);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  set_working_precision(64);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  m.def("set_precision", [](unsigned digits) { set_working_precision(digits); }, py::arg("digits"));
  m.def("normalize", [](const std::string& s) { return serialize_bigraph(parse_bigraph(s)); }, py::arg("graph"));
  m.def("info", &info, py::arg("plus"), py::arg("minus"));
  m.def("obstruct", &obstruct, py::arg("plus"), py::arg("minus"));
  m.def("chirality", &chirality_of, py::arg("plus"), py::arg("minus"));
  m.def("eliminate_weed", &weed, py::arg("spec"));
  m.def("check_elimination", &check, py::arg("certificate"));
}
