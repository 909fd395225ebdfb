#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "groupoidal/atiyah.hpp"
#include "groupoidal/automorphism.hpp"
#include "groupoidal/connection.hpp"
#include "groupoidal/errors.hpp"
#include "groupoidal/json_io.hpp"

namespace py = pybind11;
using namespace groupoidal;

namespace {

Arrow checked_arrow(const FiniteGroupoid& g, Arrow a) {
  if (a < 0 || a >= g.num_arrows()) throw py::index_error("arrow out of range");
  return a;
}

// Reports cross the boundary as JSON text; the Python layer decodes them.
std::string report_text(const ValidationReport& r) { return report_to_json(r).dump(); }

std::string transport_text(const std::string& scenario, const std::string& path, double step) {
  const Json sdoc = parse_json(scenario), pdoc = parse_json(path);
  const MatrixGroupScenario sc(scenario_from_json(sdoc));
  const int n = sc.n();
  const LocalConnectionData a = connection_from_json(sc, sdoc);
  const BasePath p = path_from_json(pdoc);
  const Mat a0 = pdoc.contains("a0") ? expm(from_coefficients(sc.group().basis, vec_from_json(pdoc["a0"])))
                                     : Mat::Identity(n, n);
  const Vec m0 = pdoc.contains("m0") ? vec_from_json(pdoc["m0"]) : Vec::Unit(n, 0);
  const auto r = parallel_transport(sc, a, p, a0, m0, step);
  const auto x = shadow_transport(sc, a, p, a0 * m0, step);
  return Json{{"a", mat_to_json(r.a)}, {"m", vec_to_json(r.m)}, {"chart", r.chart}, {"switches", r.switches},
              {"shadow_x", vec_to_json(x.x)}, {"shadow_chart", x.chart}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite groupoids, principaloid bundles and matrix-group connections";

  auto base = py::register_exception<Error>(m, "GroupoidalError");
  py::register_exception<StructuralError>(m, "StructuralError", base);
  py::register_exception<CompositionError>(m, "CompositionError", base);
  py::register_exception<EnumerationBoundError>(m, "EnumerationBoundError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<NumericError>(m, "NumericError", base);

  py::class_<FiniteGroupoid>(m, "FiniteGroupoid")
      .def_property_readonly("num_objects", &FiniteGroupoid::num_objects)
      .def_property_readonly("num_arrows", &FiniteGroupoid::num_arrows)
      .def("source", [](const FiniteGroupoid& g, Arrow a) { return g.source(checked_arrow(g, a)); })
      .def("target", [](const FiniteGroupoid& g, Arrow a) { return g.target(checked_arrow(g, a)); })
      .def("inverse", [](const FiniteGroupoid& g, Arrow a) { return g.inverse(checked_arrow(g, a)); })
      .def("unit", [](const FiniteGroupoid& g, Object m) {
        if (m < 0 || m >= g.num_objects()) throw py::index_error("object out of range");
        return g.unit(m);
      })
      .def("compose", [](const FiniteGroupoid& g, Arrow a, Arrow b) {
        return g.compose(checked_arrow(g, a), checked_arrow(g, b));
      })
      .def("arrow_label", [](const FiniteGroupoid& g, Arrow a) { return g.arrow_label(checked_arrow(g, a)); })
      .def("to_json", [](const FiniteGroupoid& g) { return groupoid_to_json(g).dump(); });

  m.def("groupoid_from_json", [](const std::string& text) { return groupoid_from_json(parse_json(text)); });
  m.def("pair_groupoid", &make_pair_groupoid);
  m.def("cyclic_group", &make_cyclic_group);
  m.def("z2_swap_groupoid", [] { return make_action_groupoid(z2_swap_action()); });
  m.def("_validate_groupoid", [](const FiniteGroupoid& g) { return report_text(validate_groupoid(g)); });
  m.def("enumerate_bisections", [](const FiniteGroupoid& g, std::size_t cap) {
    const auto group = enumerate_bisections(g, cap);
    std::vector<std::vector<Arrow>> out;
    for (const auto& b : group.elements()) out.push_back(b.assign);
    return out;
  }, py::arg("g"), py::arg("cap") = 1'000'000);
  m.def("_check_structure_identities", [](const FiniteGroupoid& g, std::size_t cap) {
    return report_text(check_structure_identities(g, cap));
  }, py::arg("g"), py::arg("cap") = 1'000'000);
  m.def("commutant_sizes", [](const FiniteGroupoid& g, std::size_t cap) {
    const auto r = r_equivariant_commutant(g, cap);
    return py::dict(py::arg("r_equivariant") = r.r_equivariant.size(), py::arg("left_mults") = r.left_mults.size(),
                    py::arg("equal") = r.equivariant_equals_left_mults);
  }, py::arg("g"), py::arg("cap") = 1'000'000);

  py::class_<PrincipaloidBundle>(m, "PrincipaloidBundle")
      .def_property_readonly("num_points", &PrincipaloidBundle::num_points)
      .def_property_readonly("num_shadow_points", &PrincipaloidBundle::num_shadow_points)
      .def("to_json", [](const PrincipaloidBundle& b) { return bundle_to_json(b).dump(); });
  m.def("three_point_example", &three_point_example);
  m.def("bundle_from_json", [](const std::string& text) { return bundle_from_json(parse_json(text)); });
  m.def("_verify_bundle", [](const PrincipaloidBundle& b, const std::string& battery) {
    if (battery == "axioms") {
      auto r = verify_principal_axioms(b);
      r.merge(verify_duck_fibres(b));
      return report_text(r);
    }
    const AtiyahGroupoid at(b);
    if (battery == "atiyah") return report_text(verify_atiyah_sequence(at));
    if (battery == "trident") return report_text(verify_trident(at));
    throw InputError("unknown battery: " + battery);
  });
  m.def("bundle_counts", [](const PrincipaloidBundle& b, std::size_t cap) {
    const AtiyahGroupoid at(b);
    return py::dict(py::arg("P") = b.num_points(), py::arg("F") = b.num_shadow_points(),
                    py::arg("Ad") = at.num_adjoint_elements(), py::arg("At") = at.num_elements(),
                    py::arg("Gauge") = enumerate_gauge_group(b, cap).size());
  }, py::arg("bundle"), py::arg("cap") = 1'000'000);

  m.def("expm", [](const Mat& x) { return expm(x); });
  m.def("so3_basis", &so3_basis);
  m.def("_transport", &transport_text, py::arg("scenario"), py::arg("path"), py::arg("step"));
}
