#pragma once

#include <string>

#include "json.hpp"
#include "simplexmeasure/measures.hpp"

// JSON description of density families (schema version 1):
//   {"schema":1, "family":"lognormal",        "mu":[...], "sigma":[[...],...]}
//   {"schema":1, "family":"multigamma",       "alpha":[...], "beta":[...]}
//   {"schema":1, "family":"multichi",         "k":[...]}
//   {"schema":1, "family":"radialreciprocal", "s":..., "n":...}
//   {"schema":1, "family":"dirac",            "point":[...]}
// The schema field may be omitted and then defaults to 1.

namespace simplexmeasure {

DensityFamily parse_family(const nlohmann::json& j);
DensityFamily parse_family_string(const std::string& text);
nlohmann::json family_to_json(const DensityFamily& f);

}  // namespace simplexmeasure
