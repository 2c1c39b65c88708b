#pragma once

// JSON forms of the verification reports. Objects have sorted keys and
// numbers use the shortest text that reads back to the same double, so
// equal inputs give byte-identical output.

#include <string>

#include "json.hpp"
#include "jetmech/simulate.hpp"
#include "jetmech/submanifolds.hpp"
#include "jetmech/triples.hpp"

namespace jetmech {

using Json = nlohmann::json;

Json to_json(const StructureMapReport& r);
Json to_json(const SubmanifoldReport& r);
Json to_json(const EqualityReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const Vec& v);

/// Serializes with sorted keys; integral doubles print without a fraction
/// ("2", not "2.0") and non-finite numbers as null. indent < 0 is compact.
std::string dump_json(const Json& value, int indent = -1);

}  // namespace jetmech
