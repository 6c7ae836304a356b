#include <doctest.h>

#include <set>

#include "aamatch/error.hpp"
#include "aamatch/generators.hpp"
#include "aamatch/json_io.hpp"
#include "aamatch/matching.hpp"
#include "aamatch/oracle.hpp"
#include "test_support.hpp"

using namespace aamatch;

namespace {

std::vector<Clause2> exampleClauses() {
  return parseClauses("a b\n!a c\nc d\n").clauses;
}

/// Sets the matching of an encoder graph cycle by cycle from a literal
/// assignment: true selects the odd-numbered arcs, false the even ones.
void applyAssignment(ArrayGraph& g, const ReductionMap& map,
                     const std::map<std::string, bool>& assignment) {
  for (const auto& [lit, cycle] : map.cycles) {
    bool value = assignment.at(lit);
    for (size_t i = 0; i < cycle.size(); ++i) {
      if ((i % 2 == 0) != value)
        continue;
      const ScalarEdgeRef& ref = cycle[i];
      int eq = g.findEquation(ref.eqId);
      int var = g.findVariable(ref.varId);
      REQUIRE(eq >= 0);
      REQUIRE(var >= 0);
      for (int arcIndex : g.arcsOfEquation(eq)) {
        Arc& arc = g.arc(arcIndex);
        if (arc.var != var)
          continue;
        arc.matching = arc.matching.unite(IncidenceMap::fromPairs(
            arc.incidence.eqShape(), arc.incidence.varShape(), {{ref.eqIndex, ref.varIndex}}));
      }
    }
  }
}

} // namespace

TEST_CASE("wire generator shapes and counts") {
  ArrayGraph wire = genWire(5);
  CHECK(wire.equations().size() == 3);
  CHECK(wire.variables().size() == 1);
  CHECK(wire.arcs().size() == 3);
  CHECK(wire.scalarEquationCount() == 5);
  CHECK(wire.scalarVariableCount() == 5);
  CHECK(wire.validate(ValidationMode::Partial).empty());

  CHECK_THROWS_AS(genWire(3), Error);
}

TEST_CASE("clause parsing handles negation, comments, and unary duplication") {
  ParsedClauses parsed = parseClauses("a b  # first\n!c\n\nd !a\n");
  REQUIRE(parsed.clauses.size() == 3);
  CHECK(parsed.unaryDuplicated == 1);
  CHECK(parsed.clauses[1].first.name == "c");
  CHECK(parsed.clauses[1].first.negated);
  CHECK(parsed.clauses[1].second == parsed.clauses[1].first);
  CHECK(parsed.clauses[2].second.name == "a");
  CHECK(parsed.clauses[2].second.negated);
}

TEST_CASE("normalization renames literals whose first occurrence is negated") {
  auto parsed = parseClauses("!a b\na b\n");
  NormalizationReport report = normalizeClauses(parsed.clauses);
  REQUIRE(report.complementRenames.count("a") == 1);
  std::string renamed = report.complementRenames.at("a");
  CHECK(parsed.clauses[0].first.name == renamed);
  CHECK_FALSE(parsed.clauses[0].first.negated);
  CHECK(parsed.clauses[1].first.name == renamed);
  CHECK(parsed.clauses[1].first.negated);
  // Satisfaction counts are preserved under the renaming.
  CHECK(maxSatisfiable(parsed.clauses) == 1);
}

TEST_CASE("encoding the running three-clause example") {
  Max2SatInstance instance = encodeMax2Sat(exampleClauses());
  const ArrayGraph& g = instance.graph;

  // Three clause arrays of size 2 on each side plus four plain nodes.
  CHECK(g.equations().size() == 7);
  CHECK(g.variables().size() == 7);
  CHECK(g.scalarEquationCount() == 10);
  CHECK(g.scalarVariableCount() == 10);
  CHECK(g.arcs().size() == 17);
  CHECK(g.validate(ValidationMode::Partial).empty());

  // Clause arcs carry identity matrices.
  for (const auto& ref : instance.map.clauses) {
    int eq = g.findEquation(ref.eqId);
    REQUIRE(eq >= 0);
    bool found = false;
    for (int arcIndex : g.arcsOfEquation(eq)) {
      const Arc& arc = g.arc(arcIndex);
      if (g.variables()[static_cast<size_t>(arc.var)].id != ref.varId)
        continue;
      found = true;
      CHECK(arc.incidence.setEquals(
          IncidenceMap::fromPairs({2}, {2}, {{{1}, {1}}, {{2}, {2}}})));
    }
    CHECK(found);
  }

  // Every scalar node has exactly two adjacent scalar arcs.
  ScalarGraph sg = flatten(g);
  std::vector<int> eqDegree(sg.equations.size(), 0);
  std::vector<int> varDegree(sg.variables.size(), 0);
  for (const auto& edge : sg.edges) {
    ++eqDegree[static_cast<size_t>(edge.eq)];
    ++varDegree[static_cast<size_t>(edge.var)];
  }
  for (int d : eqDegree)
    CHECK(d == 2);
  for (int d : varDegree)
    CHECK(d == 2);

  // Literal cycles have even length; 6 for the reoccurring a and c, 4 for
  // the single-occurrence b and d.
  CHECK(instance.map.cycles.at("a").size() == 6);
  CHECK(instance.map.cycles.at("b").size() == 4);
  CHECK(instance.map.cycles.at("c").size() == 6);
  CHECK(instance.map.cycles.at("d").size() == 4);
}

TEST_CASE("decoding the published optimal matching of the example") {
  Max2SatInstance instance = encodeMax2Sat(exampleClauses());
  std::map<std::string, bool> expected = {{"a", false}, {"b", true}, {"c", true}, {"d", true}};
  applyAssignment(instance.graph, instance.map, expected);
  REQUIRE(instance.graph.matchedScalarCount() == instance.graph.scalarEquationCount());
  REQUIRE(instance.graph.matchedView().validate(ValidationMode::Complete).empty());

  auto decoded = decodeAssignment(instance.graph, instance.map);
  CHECK(decoded == expected);
  CHECK(countSatisfied(instance.clauses, decoded) == 2);
  // Two of the three clause arrays are matched: 10 scalar pairs over 8 arcs.
  CHECK(instance.graph.matchedArcCount() == 8);
}

TEST_CASE("decoding requires a complete matching") {
  Max2SatInstance instance = encodeMax2Sat(exampleClauses());
  CHECK_THROWS_AS(decodeAssignment(instance.graph, instance.map), Error);
}

TEST_CASE("a literal repeated inside one clause stays sound") {
  ParsedClauses parsed = parseClauses("a\n"); // unary, duplicated to (a, a)
  Max2SatInstance instance = encodeMax2Sat(parsed.clauses);
  CHECK(instance.graph.validate(ValidationMode::Partial).empty());
  // One six-node cycle: the clause boxes the first-occurrence pair and the
  // positive-reoccurrence pair.
  CHECK(instance.map.cycles.at("a").size() == 6);
  CHECK(instance.graph.scalarEquationCount() == 3);

  auto result = oracle::optimalOmega(instance.graph);
  REQUIRE(result.feasible);
  auto assignment = decodeAssignment(result.witness, instance.map);
  CHECK(countSatisfied(instance.clauses, assignment) == 1);
  CHECK(assignment.at("a"));
}

TEST_CASE("contradictory unary clauses cannot both hold") {
  auto parsed = parseClauses("a\n!a\n");
  normalizeClauses(parsed.clauses);
  Max2SatInstance instance = encodeMax2Sat(parsed.clauses);
  auto result = oracle::optimalOmega(instance.graph);
  REQUIRE(result.feasible);
  auto assignment = decodeAssignment(result.witness, instance.map);
  CHECK(countSatisfied(instance.clauses, assignment) == 1);
  CHECK(maxSatisfiable(instance.clauses) == 1);
}

TEST_CASE("negated re-occurrence after a positive one pads the cycle") {
  // x appears positively twice and then negated: the third occurrence wants
  // to box the chain end, which the second occurrence already claimed, so a
  // neutral pair is inserted and the cycle stays even.
  auto parsed = parseClauses("x y\nx z\n!x w\n");
  Max2SatInstance instance = encodeMax2Sat(parsed.clauses);
  CHECK(instance.graph.validate(ValidationMode::Partial).empty());
  CHECK(instance.map.cycles.at("x").size() % 2 == 0);
  CHECK(instance.map.cycles.at("x").size() == 10); // 2 + 1 + (padding + 1) node pairs

  // Clause arcs stay identity matrices even with the padding in place.
  for (const auto& ref : instance.map.clauses) {
    int eq = instance.graph.findEquation(ref.eqId);
    REQUIRE(eq >= 0);
    for (int arcIndex : instance.graph.arcsOfEquation(eq)) {
      const Arc& arc = instance.graph.arc(arcIndex);
      if (instance.graph.variables()[static_cast<size_t>(arc.var)].id == ref.varId)
        CHECK(arc.incidence.setEquals(
            IncidenceMap::fromPairs({2}, {2}, {{{1}, {1}}, {{2}, {2}}})));
    }
  }

  auto result = oracle::optimalOmega(instance.graph);
  REQUIRE(result.feasible);
  auto assignment = decodeAssignment(result.witness, instance.map);
  CHECK(countSatisfied(instance.clauses, assignment) == maxSatisfiable(instance.clauses));
  CHECK(maxSatisfiable(instance.clauses) == 2); // x=y=z=1 satisfies the first two
}

TEST_CASE("empty clause lists give empty graphs") {
  Max2SatInstance instance = encodeMax2Sat({});
  CHECK(instance.graph.equations().empty());
  CHECK(instance.graph.variables().empty());
  CHECK(instance.graph.arcs().empty());
  CHECK(countSatisfied({}, {}) == 0);
}

TEST_CASE("unnormalized input is rejected") {
  auto parsed = parseClauses("!a b\n");
  CHECK_THROWS_AS(encodeMax2Sat(parsed.clauses), Error);
}

TEST_CASE("all-true evaluation of a single pair clause") {
  auto parsed = parseClauses("a b\n");
  CHECK(countSatisfied(parsed.clauses, {{"a", true}, {"b", true}}) == 1);
  CHECK_THROWS_AS(countSatisfied(parsed.clauses, {{"a", true}}), Error);
}

TEST_CASE("cycle parity holds for every generated instance") {
  test::Rng rng(20240711);
  const char* names[] = {"a", "b", "c", "d"};
  for (int iteration = 0; iteration < 200; ++iteration) {
    std::vector<Clause2> clauses;
    int count = static_cast<int>(test::nextInt(rng, 1, 4));
    for (int i = 0; i < count; ++i) {
      Clause2 clause;
      clause.first = {names[rng() % 4], rng() % 2 == 0};
      clause.second = {names[rng() % 4], rng() % 2 == 0};
      clauses.push_back(clause);
    }
    normalizeClauses(clauses);
    Max2SatInstance instance = encodeMax2Sat(clauses);
    for (const auto& [lit, cycle] : instance.map.cycles)
      CHECK(cycle.size() % 2 == 0);
    CHECK(instance.graph.validate(ValidationMode::Partial).empty());
  }
}

TEST_CASE("reduction round trip reaches the brute-force optimum") {
  // Exhaustive over all ordered clause pairs on two names with polarities.
  std::vector<Literal> literals;
  for (const char* name : {"a", "b"}) {
    literals.push_back({name, false});
    literals.push_back({name, true});
  }
  std::vector<Clause2> allClauses;
  for (const auto& l1 : literals) {
    for (const auto& l2 : literals)
      allClauses.push_back({l1, l2});
  }
  for (const auto& c1 : allClauses) {
    for (const auto& c2 : allClauses) {
      std::vector<Clause2> clauses{c1, c2};
      normalizeClauses(clauses);
      Max2SatInstance instance = encodeMax2Sat(clauses);
      auto result = oracle::optimalOmega(instance.graph);
      REQUIRE(result.feasible);
      auto assignment = decodeAssignment(result.witness, instance.map);
      CHECK(countSatisfied(clauses, assignment) == maxSatisfiable(clauses));
    }
  }
}

TEST_CASE("reduction round trip on sampled longer clause lists") {
  test::Rng rng(20240712);
  const char* names[] = {"a", "b", "c", "d"};
  for (int iteration = 0; iteration < 150; ++iteration) {
    std::vector<Clause2> clauses;
    int count = static_cast<int>(test::nextInt(rng, 3, 4));
    for (int i = 0; i < count; ++i) {
      Clause2 clause;
      clause.first = {names[rng() % 4], rng() % 2 == 0};
      clause.second = {names[rng() % 4], rng() % 2 == 0};
      clauses.push_back(clause);
    }
    normalizeClauses(clauses);
    Max2SatInstance instance = encodeMax2Sat(clauses);
    auto result = oracle::optimalOmega(instance.graph);
    REQUIRE(result.feasible);
    auto assignment = decodeAssignment(result.witness, instance.map);
    CHECK(countSatisfied(clauses, assignment) == maxSatisfiable(clauses));
  }
}

TEST_CASE("random graphs are deterministic per seed and valid") {
  ArrayGraph a = genRandom(42, 5, 5, 4, 0.5);
  ArrayGraph b = genRandom(42, 5, 5, 4, 0.5);
  CHECK(dumpJson(graphToJson(a)) == dumpJson(graphToJson(b)));
  ArrayGraph c = genRandom(43, 5, 5, 4, 0.5);
  CHECK(dumpJson(graphToJson(a)) != dumpJson(graphToJson(c)));

  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    ArrayGraph g = genRandom(seed, 1 + seed % 6, 1 + (seed / 2) % 6, 4, 0.3 + 0.35 * (seed % 3));
    CHECK(g.validate(ValidationMode::Partial).empty());
  }
}

TEST_CASE("full-density zero-offset squares are perfectly matchable") {
  ArrayGraph g;
  g.addEquation("e1", "e1", {4});
  g.addVariable("v1", "v1", {4});
  g.addArc("e1", "v1", IncidenceMap({4}, {4}, {{IndexSet(MultidimensionalRange({{1, 4}})), {0}}}));
  g.freeze();
  ScalarGraph sg = flatten(g);
  CHECK(oracle::hopcroftKarp(sg) == 4);
}
