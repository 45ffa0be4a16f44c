#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quadradyn/algebraic.hpp"
#include "quadradyn/bifurcate.hpp"
#include "quadradyn/classify.hpp"
#include "quadradyn/compactify.hpp"
#include "quadradyn/dynamics.hpp"
#include "quadradyn/report.hpp"

namespace py = pybind11;
using namespace quadradyn;

namespace {

FamilySpec spec_of(const std::string& spec_json) {
  return spec_from_json(json::parse(spec_json));
}

}  // namespace

PYBIND11_MODULE(_quadradyn, m) {
  m.doc() = "qualitative analysis of five quadratic planar families";

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<PoleProximityError>(m, "PoleProximityError",
                                             PyExc_ArithmeticError);

  m.def("classify", [](const std::string& spec_json, bool infinity) {
    FamilySpec spec = spec_of(spec_json);
    json result;
    result["critical_points"] = json::array();
    std::vector<std::string> notes;
    for (const auto& r : classify_family(spec)) {
      result["critical_points"].push_back(report_to_json(r));
      notes.insert(notes.end(), r.notes.begin(), r.notes.end());
    }
    if (infinity) {
      result["infinite_points"] = json::array();
      for (const auto& ir : infinite_singular_points(spec))
        result["infinite_points"].push_back(infinite_to_json(ir));
    }
    return make_envelope(spec_to_json(spec), result, notes).dump();
  }, py::arg("spec_json"), py::arg("infinity") = false);

  m.def("region_of", [](double b, double c, double d) {
    return region_to_json(region_of(b, c, d)).dump();
  });

  m.def("sweep_events", [](double b, double c, double d, char param,
                           double from, double to, int steps) {
    auto rows = sweep(b, c, d, SweepPath{param, from, to, steps});
    json out = json::array();
    for (const auto& e : detect_events(rows)) out.push_back(event_to_json(e));
    return out.dump();
  });

  m.def("first_integral", [](const std::string& spec_json) {
    FirstIntegral fi = first_integral(spec_of(spec_json));
    return json{{"kind", fi.kind == IntegralKind::Hamiltonian ? "Hamiltonian"
                                                              : "LinearInY"},
                {"expression", poly_to_json(fi.expression)},
                {"galois_note", fi.galois_note}}
        .dump();
  });

  m.def("wp_eval", [](double t, double g2, double g3) {
    return wp_eval(t, WeierstrassInvariants{g2, g3});
  });

  m.def("integrate", [](const std::string& spec_json, double x0, double y0,
                        double t_max, double step, bool adaptive) {
    VectorField2 field = build_family(spec_of(spec_json));
    IntegrateOptions opts;
    opts.step = step;
    opts.adaptive = adaptive;
    Trajectory tr = integrate(field, {x0, y0}, t_max, opts);
    std::vector<std::tuple<double, double, double>> out;
    out.reserve(tr.samples.size());
    for (const auto& s : tr.samples) out.emplace_back(s.t, s.x, s.y);
    return out;
  }, py::arg("spec_json"), py::arg("x0"), py::arg("y0"), py::arg("t_max"),
     py::arg("step") = 1e-3, py::arg("adaptive") = false);

  m.def("portrait_svg", [](const std::string& spec_json, bool disk,
                           int seeds) {
    PortraitSpec ps;
    ps.disk = disk;
    ps.seeds = seeds;
    return render_portrait(spec_of(spec_json), ps);
  }, py::arg("spec_json"), py::arg("disk") = false, py::arg("seeds") = 6);
}
