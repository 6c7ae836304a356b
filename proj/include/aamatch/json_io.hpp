#pragma once

#include <string>

#include <json.hpp>

#include "aamatch/array_graph.hpp"
#include "aamatch/generators.hpp"
#include "aamatch/incidence_map.hpp"
#include "aamatch/index_set.hpp"
#include "aamatch/scalar_graph.hpp"

namespace aamatch {

/// Insertion-ordered JSON keeps emitted documents byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Index sets encode as a list of ranges, each range a list of [lo, hi] pairs:
// [[[1,3],[2,4]]]. Incidence maps carry their shapes and diagonal elements:
// {"eqShape":[...],"varShape":[...],"elements":[{"keys":<set>,"delta":[...]}]}.
Json indexSetToJson(const IndexSet& set);
IndexSet indexSetFromJson(const Json& json, int rank);

Json incidenceMapToJson(const IncidenceMap& map);
IncidenceMap incidenceMapFromJson(const Json& json);

Json graphToJson(const ArrayGraph& graph);
ArrayGraph graphFromJson(const Json& json);

Json scalarGraphToJson(const ScalarGraph& graph);

Json reductionMapToJson(const ReductionMap& map, const std::vector<Clause2>& clauses,
                        const NormalizationReport& normalization);
void reductionMapFromJson(const Json& json, ReductionMap& map, std::vector<Clause2>& clauses);

Json clausesToJson(const std::vector<Clause2>& clauses);
std::vector<Clause2> clausesFromJson(const Json& json);

/// Parses a JSON document; parse failures carry the byte offset and context.
Json parseJsonText(const std::string& text, const std::string& what);

std::string dumpJson(const Json& json);

} // namespace aamatch
