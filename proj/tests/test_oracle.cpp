#include <doctest.h>

#include "aamatch/error.hpp"
#include "aamatch/generators.hpp"
#include "aamatch/oracle.hpp"
#include "test_support.hpp"

using namespace aamatch;

namespace {

ScalarGraph makeScalar(int eqs, int vars, const std::vector<std::pair<int, int>>& edges) {
  ScalarGraph sg;
  for (int i = 0; i < eqs; ++i)
    sg.equations.push_back({"e", {i + 1}});
  for (int i = 0; i < vars; ++i)
    sg.variables.push_back({"v", {i + 1}});
  for (auto [e, v] : edges)
    sg.edges.push_back({e, v, -1});
  sg.clearMatching();
  return sg;
}

ScalarGraph randomScalar(test::Rng& rng, int eqs, int vars, double density) {
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < eqs; ++e) {
    for (int v = 0; v < vars; ++v) {
      if (static_cast<double>(rng() % 1000) / 1000.0 < density)
        edges.emplace_back(e, v);
    }
  }
  return makeScalar(eqs, vars, edges);
}

} // namespace

TEST_CASE("maximum matching of an identity graph is perfect") {
  for (int n : {1, 3, 7}) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      edges.emplace_back(i, i);
    ScalarGraph sg = makeScalar(n, n, edges);
    CHECK(oracle::hopcroftKarp(sg) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("star graph matches exactly one equation") {
  ScalarGraph sg = makeScalar(4, 1, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  CHECK(oracle::hopcroftKarp(sg) == 1);
}

TEST_CASE("flattened wire admits a perfect matching") {
  ScalarGraph sg = flatten(genWire(5));
  CHECK(oracle::hopcroftKarp(sg) == 5);
}

TEST_CASE("hopcroft-karp agrees with exhaustive search on small instances") {
  test::Rng rng(20240708);
  for (int iteration = 0; iteration < 120; ++iteration) {
    int eqs = static_cast<int>(test::nextInt(rng, 1, 7));
    int vars = static_cast<int>(test::nextInt(rng, 1, 7));
    double density = 0.2 + 0.2 * static_cast<double>(iteration % 4);
    ScalarGraph sg = randomScalar(rng, eqs, vars, density);
    ScalarGraph forHk = sg;
    ScalarGraph forExhaustive = sg;
    CHECK(oracle::hopcroftKarp(forHk) == oracle::exhaustiveMaximumMatching(forExhaustive));
  }
}

TEST_CASE("pairs common to all maximum matchings: two independent oracles agree") {
  test::Rng rng(20240709);
  for (int iteration = 0; iteration < 60; ++iteration) {
    int eqs = static_cast<int>(test::nextInt(rng, 1, 5));
    int vars = static_cast<int>(test::nextInt(rng, 1, 5));
    ScalarGraph sg = randomScalar(rng, eqs, vars, 0.5);
    auto common = oracle::pairsInEveryMaximumMatching(sg);
    for (const auto& edge : sg.edges) {
      bool inAll = common.count({edge.eq, edge.var}) > 0;
      CHECK(inAll == oracle::pairInEveryMaximumMatchingByRemoval(sg, edge.eq, edge.var));
    }
  }
}

TEST_CASE("minimal matched-arc count of the wire is 3") {
  for (Index n : {4, 5}) {
    auto result = oracle::optimalOmega(genWire(n));
    REQUIRE(result.feasible);
    CHECK(result.omega == 3);
    CHECK(result.witness.matchedScalarCount() == static_cast<std::uint64_t>(n));
    CHECK(result.witness.matchedView().validate(ValidationMode::Complete).empty());
  }
}

TEST_CASE("single identity arc needs one arc") {
  ArrayGraph g;
  g.addEquation("e1", "e1", {3});
  g.addVariable("v1", "v1", {3});
  g.addArc("e1", "v1", IncidenceMap({3}, {3}, {{IndexSet(MultidimensionalRange({{1, 3}})), {0}}}));
  g.freeze();
  auto result = oracle::optimalOmega(g);
  REQUIRE(result.feasible);
  CHECK(result.omega == 1);
}

TEST_CASE("infeasible systems are reported, not thrown") {
  // Two scalar equations share the single scalar variable.
  ArrayGraph g;
  g.addEquation("e1", "e1", {2});
  g.addVariable("v1", "v1", {1});
  g.addArc("e1", "v1", IncidenceMap::fromPairs({2}, {1}, {{{1}, {1}}, {{2}, {1}}}));
  g.freeze();
  auto result = oracle::optimalOmega(g);
  CHECK_FALSE(result.feasible);
}

TEST_CASE("the scalar-equation cap guards the exhaustive search") {
  CHECK_THROWS_AS(oracle::optimalOmega(genWire(100)), Error);
}

TEST_CASE("a matched-arc hint can only improve or confirm the result") {
  test::Rng rng(20240710);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    ArrayGraph g = genRandom(seed, 3, 3, 3, 0.7);
    auto plain = oracle::optimalOmega(g);
    if (!plain.feasible)
      continue;
    auto hinted = oracle::optimalOmega(g, 24, &plain.witness);
    CHECK(hinted.feasible);
    CHECK(hinted.omega == plain.omega);
  }
}

TEST_CASE("dense subtraction of a matrix from itself is empty") {
  test::Rng rng(11);
  auto map = test::randomIncidenceMap(rng, {4}, {4}, 0.5);
  auto dense = oracle::DenseIncidence::fromMap(map);
  CHECK(dense.denseSubtract(dense).count() == 0);
}

TEST_CASE("dense diagonal options of the 3x3 example") {
  oracle::DenseIncidence u({3}, {3});
  u.set({1}, {1}, true);
  u.set({2}, {1}, true);
  u.set({3}, {1}, true);
  u.set({2}, {2}, true);
  u.set({3}, {3}, true);
  auto options = u.matchOptions();
  REQUIRE(options.size() == 3);
  CHECK(options[0].count() == 3); // the full diagonal comes first
  CHECK(options[0].get({1}, {1}));
  CHECK(options[0].get({2}, {2}));
  CHECK(options[0].get({3}, {3}));
  CHECK(options[1].count() == 1);
  CHECK(options[2].count() == 1);
}

TEST_CASE("dense flatten of the identity") {
  oracle::DenseIncidence identity({3}, {3});
  for (Index i = 1; i <= 3; ++i)
    identity.set({i}, {i}, true);
  CHECK(identity.flattenColumns() == std::vector<Point>{{1}, {2}, {3}});
  CHECK(identity.flattenRows() == std::vector<Point>{{1}, {2}, {3}});
}
