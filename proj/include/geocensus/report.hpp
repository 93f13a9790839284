#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "geocensus/census.hpp"
#include "geocensus/quaternion.hpp"
#include "geocensus/spectra.hpp"

namespace geocensus::report {

using nlohmann::json;

// Rounds to 12 significant digits so renderings are stable across runs.
double round12(double value);

json integer(const Integer& n);
json integers(const std::vector<Integer>& values);
json field(const QuadField& f);
json order(const QuadOrder& o);
json coarea(const Coarea& c);
json algebra_class(const AlgebraClass& c);
json geodesic(const GeodesicClass& g);
json verdict(const FinitenessVerdict& v);
json census(const CensusReport& r);
json selectivity(const SelectivityVerdict& v);

/// {"command", "inputs", "result", "warnings"} with sorted keys.
json document(const std::string& command, json inputs, json result, std::vector<std::string> warnings);

/// One row per class: ramified,at_infinity,is_division,coarea_symbolic,coarea.
std::string classes_csv(const json& classes);

/// Flattened "pointer,value" lines of an arbitrary document.
std::string flat_csv(const json& doc);

} // namespace geocensus::report
