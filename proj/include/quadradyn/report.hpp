#pragma once

#include <string>

#include <json.hpp>

#include "quadradyn/bifurcate.hpp"
#include "quadradyn/classify.hpp"
#include "quadradyn/compactify.hpp"
#include "quadradyn/families.hpp"
#include "quadradyn/poly.hpp"

namespace quadradyn {

using json = nlohmann::json;

/// 17 significant digits, round-trip exact.
std::string format_double(double v);

json poly_to_json(const Poly2& p);
Poly2 poly_from_json(const json& j);

json spec_to_json(const FamilySpec& spec);
FamilySpec spec_from_json(const json& j);

json report_to_json(const CriticalPointReport& r);
json infinite_to_json(const InfinitePointReport& r);
json region_to_json(const ParameterRegion& r);
json event_to_json(const BifurcationEvent& e);

/// "Thm2.1(a)" or "Thm2.2(2.iii.c)".
std::string trace_string(const std::vector<std::string>& trace);

/// Printed chart systems we deliberately deviate from; one string per
/// rederived sign, keyed by family.
std::vector<std::string> chart_printed_deviations(Family tag);

/// Self-describing report wrapper: version, spec echo, thresholds in
/// force, payload, accumulated deviation notes.
json make_envelope(const json& spec_echo, const json& result,
                   const std::vector<std::string>& notes);

}  // namespace quadradyn
