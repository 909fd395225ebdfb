#ifndef GROUPOIDAL_JSON_IO_HPP
#define GROUPOIDAL_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "groupoidal/atiyah.hpp"
#include "groupoidal/automorphism.hpp"
#include "groupoidal/connection.hpp"
#include "groupoidal/groupoid.hpp"
#include "groupoidal/report.hpp"
#include "groupoidal/scenario.hpp"

namespace groupoidal {

using Json = nlohmann::json;

// Parse failures and missing or mistyped fields throw InputError.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

// {"kind": ..., params} for pair, cyclic, symmetric, group, action, z2-swap,
// fibred-pair and product.
FiniteGroupoid construct_standard(const std::string& kind, const Json& params);

Json groupoid_to_json(const FiniteGroupoid& g);
// Accepts a table document or a {"kind": ...} constructor document.
FiniteGroupoid groupoid_from_json(const Json& j);

Json bisection_to_json(const Bisection& b);
Bisection bisection_from_json(const Json& j);

Json bundle_to_json(const PrincipaloidBundle& bundle);
PrincipaloidBundle bundle_from_json(const Json& j, bool skip_validation = false);
// Base point by index or label.
int base_point_from_json(const CechBase& base, const Json& j);

Json automorphism_to_json(const AutomorphismData& d);
AutomorphismData automorphism_from_json(const CechBase& base, const Json& j);

Json atiyah_element_to_json(const AtiyahGroupoid& at, const AtiyahElement& e);

Json report_to_json(const ValidationReport& r);

// {"scenario": name} with optional overrides, or a full parameter document.
ScenarioParams scenario_from_json(const Json& j);
Json scenario_to_json(const ScenarioParams& p);

// {"polyline": [[...], ...]} or {"from": [...], "to": [...]}, with an optional
// "itinerary": [[t, chart], ...].
BasePath path_from_json(const Json& j);

// "connection": "constructed" (default), "zero" or {"kind": "constant",
// "coefficients": [[...] per base direction]}, read from a scenario document.
LocalConnectionData connection_from_json(const MatrixGroupScenario& scenario, const Json& doc);

Vec vec_from_json(const Json& j);
Json vec_to_json(const Vec& v);
Json mat_to_json(const Mat& m);

}  // namespace groupoidal

#endif
