#include <doctest.h>

#include "aamatch/error.hpp"
#include "aamatch/generators.hpp"
#include "aamatch/json_io.hpp"
#include "aamatch/matching.hpp"
#include "test_support.hpp"

using namespace aamatch;

TEST_CASE("index set encoding matches the documented shape") {
  IndexSet set(MultidimensionalRange({{1, 3}, {2, 4}}));
  Json json = indexSetToJson(set);
  CHECK(json.dump() == "[[[1,3],[2,4]]]");
  CHECK(indexSetFromJson(json, 2).setEquals(set));
}

TEST_CASE("incidence map round trip") {
  test::Rng rng(20240713);
  for (int iteration = 0; iteration < 50; ++iteration) {
    Shape eqShape = test::randomShape(rng, 1 + iteration % 2, 4);
    Shape varShape = test::randomShape(rng, 1, 4);
    IncidenceMap map = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    IncidenceMap back = incidenceMapFromJson(incidenceMapToJson(map));
    CHECK(back.setEquals(map));
  }
}

TEST_CASE("graph round trips are byte-stable") {
  ArrayGraph wire = genWire(7);
  simplify(wire);
  std::string once = dumpJson(graphToJson(wire));
  ArrayGraph reloaded = graphFromJson(parseJsonText(once, "wire"));
  CHECK(dumpJson(graphToJson(reloaded)) == once);
  CHECK(reloaded.matchedScalarCount() == wire.matchedScalarCount());

  ArrayGraph random = genRandom(99, 4, 5, 3, 0.5);
  std::string text = dumpJson(graphToJson(random));
  CHECK(dumpJson(graphToJson(graphFromJson(parseJsonText(text, "g")))) == text);
}

TEST_CASE("schema violations carry context") {
  CHECK_THROWS_WITH_AS(parseJsonText("{", "graph"), doctest::Contains("graph"), Error);

  Json bad = parseJsonText(R"({"schema": 99, "equations": [], "variables": [], "arcs": []})",
                           "graph");
  CHECK_THROWS_WITH_AS(graphFromJson(bad), doctest::Contains("schema"), Error);

  Json missing = parseJsonText(R"({"schema": 1, "equations": [{"id": "e"}]})", "graph");
  CHECK_THROWS_AS(graphFromJson(missing), Error);
}

TEST_CASE("matching matrices load and violations surface via validate") {
  // A matching entry outside the incidence is parseable data, reported by
  // validate rather than the loader.
  Json doc = parseJsonText(R"({
    "schema": 1,
    "equations": [{"id": "e1", "name": "e1", "size": [2]}],
    "variables": [{"id": "v1", "name": "v1", "size": [2]}],
    "arcs": [{
      "eq": "e1", "var": "v1",
      "incidence": {"eqShape": [2], "varShape": [2],
                    "elements": [{"keys": [[[1, 2]]], "delta": [0]}]},
      "matching": {"eqShape": [2], "varShape": [2],
                   "elements": [{"keys": [[[2, 2]]], "delta": [-1]}]}
    }]
  })",
                           "graph");
  ArrayGraph g = graphFromJson(doc);
  auto violations = g.validate(ValidationMode::Partial);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].condition == 5);
}

TEST_CASE("scalar graph export lists nodes, arcs, and matching") {
  ArrayGraph wire = genWire(4);
  simplify(wire);
  Json json = scalarGraphToJson(flatten(wire));
  CHECK(json.at("equations").size() == 4);
  CHECK(json.at("variables").size() == 4);
  CHECK(json.at("arcs").size() == 4);
  CHECK(json.at("matching").size() == 4);
}

TEST_CASE("reduction map round trip") {
  auto parsed = parseClauses("a b\n!a c\nc d\n");
  Max2SatInstance instance = encodeMax2Sat(parsed.clauses);
  Json json = reductionMapToJson(instance.map, instance.clauses, {});
  ReductionMap map;
  std::vector<Clause2> clauses;
  reductionMapFromJson(json, map, clauses);
  CHECK(clauses.size() == 3);
  CHECK(map.cycles.size() == 4);
  CHECK(map.clauses.size() == 3);
  CHECK(map.cycles.at("a").size() == instance.map.cycles.at("a").size());
  CHECK(dumpJson(reductionMapToJson(map, clauses, {})) == dumpJson(json));
}
