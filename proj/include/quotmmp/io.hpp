#pragma once

#include <string>

#include <json.hpp>

#include "quotmmp/census.hpp"
#include "quotmmp/fan.hpp"
#include "quotmmp/point.hpp"

namespace quotmmp {

using nlohmann::json;

// Field encoding shared by the point and subspace files:
//   {"type": "Q"}  or  {"type": "Fp", "p": 101}
json field_to_json(const FieldSpec& field);
FieldSpec field_from_json(const json& j);

// Short field notation for flags: "Q", or "Fp:101".
FieldSpec field_from_flag(const std::string& text);

// Point file: field, n, r, d, column_degrees, entries (n x s polynomial
// strings in the form grammar). Files without a field entry fall back to
// `fallback`.
json point_to_json(const SheafMapPoint& pt);
SheafMapPoint point_from_json(const json& j, const FieldSpec& fallback = FieldSpec::rationals());
SheafMapPoint point_from_string(const std::string& text,
                                const FieldSpec& fallback = FieldSpec::rationals());

// Subspace file: field, n, r, d, level m, RREF basis rows as coordinate
// strings.
json subspace_to_json(const GrassmannPoint& K);
GrassmannPoint subspace_from_json(const json& j,
                                  const FieldSpec& fallback = FieldSpec::rationals());
GrassmannPoint subspace_from_string(const std::string& text,
                                    const FieldSpec& fallback = FieldSpec::rationals());

json report_to_json(const MMPReport& rep);
MMPReport report_from_json(const json& j);

json census_to_json(const CensusResult& res);
std::string census_to_text(const CensusResult& res);
std::string census_to_csv(const CensusResult& res);

json cross_check_to_json(const Pr1CrossCheck& cc);

json star_check_to_json(const StarCheck& sc, int m);
json diagnostics_to_json(const PointDiagnostics& diag);

}  // namespace quotmmp
