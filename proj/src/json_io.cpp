#include "aamatch/json_io.hpp"

#include "aamatch/error.hpp"

namespace aamatch {

namespace {

const Json& member(const Json& json, const char* key, const std::string& what) {
  auto it = json.find(key);
  if (it == json.end())
    throwError(ErrorKind::Parse, what + ": missing field '" + key + "'");
  return *it;
}

Shape shapeFromJson(const Json& json, const std::string& what) {
  if (!json.is_array() || json.empty())
    throwError(ErrorKind::Parse, what + ": expected a non-empty size array");
  Shape shape;
  for (const auto& v : json) {
    if (!v.is_number_integer() || v.get<Index>() < 1)
      throwError(ErrorKind::Parse, what + ": sizes must be positive integers");
    shape.push_back(v.get<Index>());
  }
  return shape;
}

Point pointFromJson(const Json& json, const std::string& what) {
  if (!json.is_array() || json.empty())
    throwError(ErrorKind::Parse, what + ": expected a non-empty index array");
  Point point;
  for (const auto& v : json) {
    if (!v.is_number_integer())
      throwError(ErrorKind::Parse, what + ": indices must be integers");
    point.push_back(v.get<Index>());
  }
  return point;
}

} // namespace

Json parseJsonText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throwError(ErrorKind::Parse, what + ": " + e.what());
  }
}

std::string dumpJson(const Json& json) { return json.dump(2) + "\n"; }

Json indexSetToJson(const IndexSet& set) {
  Json ranges = Json::array();
  for (const auto& range : set.ranges()) {
    Json bounds = Json::array();
    for (const auto& [lo, hi] : range.bounds())
      bounds.push_back(Json::array({lo, hi}));
    ranges.push_back(std::move(bounds));
  }
  return ranges;
}

IndexSet indexSetFromJson(const Json& json, int rank) {
  if (!json.is_array())
    throwError(ErrorKind::Parse, "index set: expected an array of ranges");
  std::vector<MultidimensionalRange> ranges;
  for (const auto& rangeJson : json) {
    if (!rangeJson.is_array() || static_cast<int>(rangeJson.size()) != rank)
      throwError(ErrorKind::Parse, "index set: range arity does not match rank " +
                                       std::to_string(rank));
    std::vector<std::pair<Index, Index>> bounds;
    for (const auto& pairJson : rangeJson) {
      if (!pairJson.is_array() || pairJson.size() != 2 || !pairJson[0].is_number_integer() ||
          !pairJson[1].is_number_integer())
        throwError(ErrorKind::Parse, "index set: each bound must be a [lo, hi] pair");
      bounds.emplace_back(pairJson[0].get<Index>(), pairJson[1].get<Index>());
    }
    ranges.emplace_back(std::move(bounds));
  }
  return IndexSet(rank, std::move(ranges));
}

Json incidenceMapToJson(const IncidenceMap& map) {
  Json out;
  out["eqShape"] = map.eqShape();
  out["varShape"] = map.varShape();
  Json elements = Json::array();
  for (const auto& element : map.elements()) {
    Json e;
    e["keys"] = indexSetToJson(element.keys);
    e["delta"] = element.delta;
    elements.push_back(std::move(e));
  }
  out["elements"] = std::move(elements);
  return out;
}

IncidenceMap incidenceMapFromJson(const Json& json) {
  if (!json.is_object())
    throwError(ErrorKind::Parse, "incidence map: expected an object");
  Shape eqShape = shapeFromJson(member(json, "eqShape", "incidence map"), "incidence map eqShape");
  Shape varShape =
      shapeFromJson(member(json, "varShape", "incidence map"), "incidence map varShape");
  int rank = static_cast<int>(std::max(eqShape.size(), varShape.size()));

  std::vector<IncidenceMap::Element> elements;
  const Json& elementsJson = member(json, "elements", "incidence map");
  if (!elementsJson.is_array())
    throwError(ErrorKind::Parse, "incidence map: 'elements' must be an array");
  for (const auto& elementJson : elementsJson) {
    Point delta = pointFromJson(member(elementJson, "delta", "incidence map element"),
                                "incidence map delta");
    if (static_cast<int>(delta.size()) != rank)
      throwError(ErrorKind::Parse, "incidence map: delta arity must be " + std::to_string(rank));
    IndexSet keys = indexSetFromJson(member(elementJson, "keys", "incidence map element"), rank);
    elements.push_back({std::move(keys), std::move(delta)});
  }
  return IncidenceMap(std::move(eqShape), std::move(varShape), std::move(elements));
}

Json graphToJson(const ArrayGraph& graph) {
  Json out;
  out["schema"] = kSchemaVersion;
  Json equations = Json::array();
  for (const auto& node : graph.equations()) {
    Json n;
    n["id"] = node.id;
    n["name"] = node.name;
    n["size"] = node.size;
    equations.push_back(std::move(n));
  }
  out["equations"] = std::move(equations);
  Json variables = Json::array();
  for (const auto& node : graph.variables()) {
    Json n;
    n["id"] = node.id;
    n["name"] = node.name;
    n["size"] = node.size;
    variables.push_back(std::move(n));
  }
  out["variables"] = std::move(variables);
  Json arcs = Json::array();
  for (const auto& arc : graph.arcs()) {
    Json a;
    a["eq"] = graph.equations()[static_cast<size_t>(arc.eq)].id;
    a["var"] = graph.variables()[static_cast<size_t>(arc.var)].id;
    a["incidence"] = incidenceMapToJson(arc.incidence);
    if (!arc.matching.empty())
      a["matching"] = incidenceMapToJson(arc.matching);
    arcs.push_back(std::move(a));
  }
  out["arcs"] = std::move(arcs);
  return out;
}

ArrayGraph graphFromJson(const Json& json) {
  if (!json.is_object())
    throwError(ErrorKind::Parse, "graph: expected an object");
  const Json& schema = member(json, "schema", "graph");
  if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
    throwError(ErrorKind::Parse, "graph: unsupported schema version");

  ArrayGraph graph;
  for (const auto& nodeJson : member(json, "equations", "graph")) {
    std::string id = member(nodeJson, "id", "equation node").get<std::string>();
    std::string name =
        nodeJson.contains("name") ? nodeJson["name"].get<std::string>() : id;
    graph.addEquation(id, name, shapeFromJson(member(nodeJson, "size", "equation node"),
                                              "equation node '" + id + "'"));
  }
  for (const auto& nodeJson : member(json, "variables", "graph")) {
    std::string id = member(nodeJson, "id", "variable node").get<std::string>();
    std::string name =
        nodeJson.contains("name") ? nodeJson["name"].get<std::string>() : id;
    graph.addVariable(id, name, shapeFromJson(member(nodeJson, "size", "variable node"),
                                              "variable node '" + id + "'"));
  }
  for (const auto& arcJson : member(json, "arcs", "graph")) {
    std::string eqId = member(arcJson, "eq", "arc").get<std::string>();
    std::string varId = member(arcJson, "var", "arc").get<std::string>();
    IncidenceMap incidence = incidenceMapFromJson(member(arcJson, "incidence", "arc"));
    if (arcJson.contains("matching")) {
      graph.addArc(eqId, varId, std::move(incidence),
                   incidenceMapFromJson(arcJson["matching"]));
    } else {
      graph.addArc(eqId, varId, std::move(incidence));
    }
  }
  graph.freeze();
  return graph;
}

Json scalarGraphToJson(const ScalarGraph& graph) {
  Json out;
  out["schema"] = kSchemaVersion;
  auto nodeArray = [](const std::vector<ScalarGraph::ScalarNode>& nodes) {
    Json arr = Json::array();
    for (const auto& node : nodes) {
      Json n;
      n["array"] = node.arrayId;
      n["index"] = node.index;
      arr.push_back(std::move(n));
    }
    return arr;
  };
  out["equations"] = nodeArray(graph.equations);
  out["variables"] = nodeArray(graph.variables);
  Json edges = Json::array();
  for (const auto& edge : graph.edges)
    edges.push_back(Json::array({edge.eq, edge.var}));
  out["arcs"] = std::move(edges);
  Json matching = Json::array();
  for (size_t eq = 0; eq < graph.matchedVar.size(); ++eq) {
    if (graph.matchedVar[eq] >= 0)
      matching.push_back(Json::array({static_cast<int>(eq), graph.matchedVar[eq]}));
  }
  out["matching"] = std::move(matching);
  return out;
}

Json clausesToJson(const std::vector<Clause2>& clauses) {
  Json out = Json::array();
  for (const auto& clause : clauses) {
    auto lit = [](const Literal& l) {
      Json j;
      j["name"] = l.name;
      j["negated"] = l.negated;
      return j;
    };
    out.push_back(Json::array({lit(clause.first), lit(clause.second)}));
  }
  return out;
}

std::vector<Clause2> clausesFromJson(const Json& json) {
  if (!json.is_array())
    throwError(ErrorKind::Parse, "clauses: expected an array");
  std::vector<Clause2> out;
  for (const auto& clauseJson : json) {
    if (!clauseJson.is_array() || clauseJson.size() != 2)
      throwError(ErrorKind::Parse, "clauses: each clause is a pair of literals");
    auto lit = [](const Json& j) {
      Literal l;
      l.name = member(j, "name", "literal").get<std::string>();
      l.negated = member(j, "negated", "literal").get<bool>();
      return l;
    };
    out.push_back({lit(clauseJson[0]), lit(clauseJson[1])});
  }
  return out;
}

namespace {

Json edgeRefToJson(const ScalarEdgeRef& ref) {
  Json out;
  out["eq"] = ref.eqId;
  out["var"] = ref.varId;
  out["k"] = ref.eqIndex;
  out["j"] = ref.varIndex;
  return out;
}

ScalarEdgeRef edgeRefFromJson(const Json& json) {
  ScalarEdgeRef ref;
  ref.eqId = member(json, "eq", "edge reference").get<std::string>();
  ref.varId = member(json, "var", "edge reference").get<std::string>();
  ref.eqIndex = pointFromJson(member(json, "k", "edge reference"), "edge reference k");
  ref.varIndex = pointFromJson(member(json, "j", "edge reference"), "edge reference j");
  return ref;
}

} // namespace

Json reductionMapToJson(const ReductionMap& map, const std::vector<Clause2>& clauses,
                        const NormalizationReport& normalization) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["clauses"] = clausesToJson(clauses);
  Json renames = Json::object();
  for (const auto& [from, to] : normalization.complementRenames)
    renames[from] = to;
  out["renames"] = std::move(renames);
  Json clauseRefs = Json::array();
  for (const auto& ref : map.clauses) {
    Json c;
    c["eq"] = ref.eqId;
    c["var"] = ref.varId;
    c["first"] = edgeRefToJson(ref.first);
    c["second"] = edgeRefToJson(ref.second);
    clauseRefs.push_back(std::move(c));
  }
  out["clauseArcs"] = std::move(clauseRefs);
  Json cycles = Json::object();
  for (const auto& [lit, edges] : map.cycles) {
    Json arr = Json::array();
    for (const auto& edge : edges)
      arr.push_back(edgeRefToJson(edge));
    cycles[lit] = std::move(arr);
  }
  out["cycles"] = std::move(cycles);
  return out;
}

void reductionMapFromJson(const Json& json, ReductionMap& map, std::vector<Clause2>& clauses) {
  clauses = clausesFromJson(member(json, "clauses", "reduction map"));
  map.clauses.clear();
  for (const auto& refJson : member(json, "clauseArcs", "reduction map")) {
    ReductionMap::ClauseRef ref;
    ref.eqId = member(refJson, "eq", "clause arc").get<std::string>();
    ref.varId = member(refJson, "var", "clause arc").get<std::string>();
    ref.first = edgeRefFromJson(member(refJson, "first", "clause arc"));
    ref.second = edgeRefFromJson(member(refJson, "second", "clause arc"));
    map.clauses.push_back(std::move(ref));
  }
  map.cycles.clear();
  for (const auto& [lit, edgesJson] : member(json, "cycles", "reduction map").items()) {
    std::vector<ScalarEdgeRef> edges;
    for (const auto& edgeJson : edgesJson)
      edges.push_back(edgeRefFromJson(edgeJson));
    map.cycles[lit] = std::move(edges);
  }
}

} // namespace aamatch
