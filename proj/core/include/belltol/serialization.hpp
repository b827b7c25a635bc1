#pragma once

#include <json.hpp>
#include <string>

#include "belltol/bell_scenario.hpp"
#include "belltol/linalg.hpp"
#include "belltol/local_polytope.hpp"
#include "belltol/quantum_value.hpp"
#include "belltol/states.hpp"
#include "belltol/tolerance_bounds.hpp"

namespace belltol {

using nlohmann::json;

// Rounds to 9 significant digits, the precision of every reported number.
double round_reported(double v);

// {"re": [[...]], "im": [[...]]}; "im" is optional on input.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// {"d", "n", "re", "im"}; the matrix is validated as a density matrix.
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

// {"settings": [S_1, ...], "outcomes": ...}. outcomes[n] is a list of values
// shared by all settings of party n, or a list of per-setting value lists.
json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const json& j);

// Scenario fields plus "name" and "coeffs": an object keyed by 0-based joint
// settings "s1,s2,..." whose values are coefficient tables in joint outcome
// order. Missing joint settings have zero coefficients.
json functional_to_json(const BellFunctional& f);
BellFunctional functional_from_json(const json& j);

// {"parties": [[{"values": [...], "effects": [matrix, ...]}, ...], ...]}
json measurements_to_json(const MeasurementAssignment& m);
MeasurementAssignment measurements_from_json(const json& j);

// {beta_star, scenario, certificate_kind, weights | dual, ...}
json visibility_to_json(const VisibilityResult& v);

json report_to_json(const ToleranceReport& r);

// Parse errors and schema violations surface as ValidationError.
json parse_json_file(const std::string& path);

}  // namespace belltol
