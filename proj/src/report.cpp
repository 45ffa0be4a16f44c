#include "quadradyn/report.hpp"

#include <cstdio>

namespace quadradyn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json poly_to_json(const Poly2& p) {
  json terms = json::array();
  for (const auto& [key, coeff] : p.terms())
    terms.push_back({{"i", key.first}, {"j", key.second}, {"c", coeff}});
  return {{"terms", terms}};
}

Poly2 poly_from_json(const json& j) {
  Poly2 p;
  for (const auto& t : j.at("terms"))
    p += Poly2::monomial(t.at("i").get<int>(), t.at("j").get<int>(),
                         t.at("c").get<double>());
  return p;
}

json spec_to_json(const FamilySpec& spec) {
  json j{{"family", family_name(spec.tag)}};
  switch (spec.tag) {
    case Family::I:
      j["c"] = spec.c;
      break;
    case Family::II:
      j["b"] = spec.b;
      break;
    case Family::III:
      j["a"] = spec.a;
      break;
    case Family::IV:
      j["a"] = spec.a;
      j["c"] = spec.c;
      j["p"] = spec.p;
      break;
    case Family::V:
      j["b"] = spec.b;
      j["c"] = spec.c;
      j["s"] = spec.s;
      break;
  }
  return j;
}

FamilySpec spec_from_json(const json& j) {
  FamilySpec spec;
  spec.tag = family_from_name(j.at("family").get<std::string>());
  if (j.contains("a")) spec.a = j["a"].get<double>();
  if (j.contains("b")) spec.b = j["b"].get<double>();
  if (j.contains("c")) spec.c = j["c"].get<double>();
  if (j.contains("p")) spec.p = j["p"].get<int>();
  if (j.contains("s")) spec.s = j["s"].get<int>();
  return spec;
}

std::string trace_string(const std::vector<std::string>& trace) {
  if (trace.empty()) return "";
  if (trace.size() == 1) return trace.front();
  std::string out = trace.front() + "(";
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (i > 1) out += ".";
    out += trace[i];
  }
  return out + ")";
}

json report_to_json(const CriticalPointReport& r) {
  json j;
  j["location"] = {r.location[0], r.location[1]};
  json eigs = json::array();
  if (r.eigen) {
    eigs.push_back(
        {{"re", r.eigen->lambda1.real()}, {"im", r.eigen->lambda1.imag()}});
    eigs.push_back(
        {{"re", r.eigen->lambda2.real()}, {"im", r.eigen->lambda2.imag()}});
  }
  j["eigenvalues"] = eigs;
  j["label"] = label_name(r.classification.label);
  j["trace"] = trace_string(r.classification.theorem_trace);
  if (r.classification.series) {
    const SeriesData& s = *r.classification.series;
    j["series"] = {{"m", s.m}, {"n", s.n}, {"a", s.a}, {"b", s.b}};
  }
  if (r.manifold) {
    const ManifoldApprox& m = *r.manifold;
    j["manifold"] = {
        {"point", {m.point[0], m.point[1]}},
        {"w", m.w},
        {"v", m.v},
        {"stable_coeff", m.stable_coeff},
        {"unstable_coeff", m.unstable_coeff},
        {"change_of_basis",
         {{m.change_of_basis[0][0], m.change_of_basis[0][1]},
          {m.change_of_basis[1][0], m.change_of_basis[1][1]}}}};
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json infinite_to_json(const InfinitePointReport& r) {
  json j = report_to_json(r.report);
  j["chart"] = chart_name(r.chart);
  j["direction"] = r.direction;
  return j;
}

json region_to_json(const ParameterRegion& r) {
  return {{"r_label", r.r_label},
          {"e_labels", r.e_labels},
          {"all_r_labels", r.all_r_labels},
          {"witness", {r.b, r.c, r.d}},
          {"boundary_distances", r.boundary_distances}};
}

json event_to_json(const BifurcationEvent& e) {
  return {{"kind", event_kind_name(e.kind)},
          {"parameter_value", e.parameter_value},
          {"before_labels", e.before_labels},
          {"after_labels", e.after_labels},
          {"evidence", e.evidence}};
}

std::vector<std::string> chart_printed_deviations(Family tag) {
  switch (tag) {
    case Family::I:
      return {"chart U2: printed system (2.9) has v' = -c u^2 v; the general "
              "transform and the stated series data give v' = +c u^2 v"};
    case Family::II:
      return {"chart U1: printed system has u' = -u^2 v + 2b; the general "
              "transform gives u' = -u^2 v + 2bu, whose u = 0 zero is the "
              "equator closure of the critical line y = 0"};
    case Family::III:
      return {"chart U1: printed system has u' = -u^2 v + 2a; the general "
              "transform gives u' = -u^2 v + 2au, whose u = 0 zero is the "
              "equator closure of the critical line y = 0"};
    case Family::IV:
      return {"chart U2: printed system (2.12) leading term -d v^2/2 "
              "rederived from the general transform"};
    case Family::V:
      return {"chart U2: printed system (2.13) leading term -d v^2/2 "
              "rederived from the general transform"};
    default:
      return {};
  }
}

json make_envelope(const json& spec_echo, const json& result,
                   const std::vector<std::string>& notes) {
  json j;
  j["version"] = "quadradyn 0.1.0";
  j["spec"] = spec_echo;
  j["thresholds"] = {{"tau0", 1e-12},
                     {"series_order", 12},
                     {"criticality_tol", 1e-10},
                     {"param_tol", 1e-8}};
  j["notes"] = notes;
  j["result"] = result;
  return j;
}

}  // namespace quadradyn
