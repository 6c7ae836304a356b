#include <doctest.h>

#include <set>

#include "aamatch/error.hpp"
#include "aamatch/incidence_map.hpp"
#include "aamatch/oracle.hpp"
#include "test_support.hpp"

using namespace aamatch;
using oracle::DenseIncidence;

namespace {

using PairSet = std::set<std::pair<Point, Point>>;

PairSet pairSet(const IncidenceMap& map) {
  auto pairs = map.pairs();
  return {pairs.begin(), pairs.end()};
}

PairSet pairSet(const DenseIncidence& dense) {
  auto pairs = dense.pairs();
  return {pairs.begin(), pairs.end()};
}

/// The 3x3 matrix used as the running example: ones in the whole first
/// column plus (2,2) and (3,3).
IncidenceMap exampleMatrix() {
  return IncidenceMap::fromPairs({3}, {3}, {{{1}, {1}},
                                           {{2}, {1}},
                                           {{3}, {1}},
                                           {{2}, {2}},
                                           {{3}, {3}}});
}

} // namespace

TEST_CASE("diagonal grouping of the 3x3 example") {
  IncidenceMap u = exampleMatrix();
  REQUIRE(u.elements().size() == 3);
  // Elements are sorted by delta.
  CHECK(u.elements()[0].delta == Point{-2});
  CHECK(u.elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{3, 3}}))));
  CHECK(u.elements()[1].delta == Point{-1});
  CHECK(u.elements()[1].keys.setEquals(IndexSet(MultidimensionalRange({{2, 2}}))));
  CHECK(u.elements()[2].delta == Point{0});
  CHECK(u.elements()[2].keys.setEquals(IndexSet(MultidimensionalRange({{1, 3}}))));
  CHECK(u.cardinality() == 5);
  CHECK(u.contains({3}, {1}));
  CHECK_FALSE(u.contains({1}, {3}));
}

TEST_CASE("match options of the 3x3 example") {
  auto options = exampleMatrix().matchOptions();
  REQUIRE(options.size() == 3);
  // Largest first, then ascending delta; strictly contained options such as
  // the lone (1,1) never appear because every option is a whole diagonal.
  CHECK(pairSet(options[0]) == PairSet{{{1}, {1}}, {{2}, {2}}, {{3}, {3}}});
  CHECK(pairSet(options[1]) == PairSet{{{3}, {1}}});
  CHECK(pairSet(options[2]) == PairSet{{{2}, {1}}});
}

TEST_CASE("match options of a full 2x2 matrix") {
  auto options = IncidenceMap::full({2}, {2}).matchOptions();
  REQUIRE(options.size() == 3);
  CHECK(options[0].elements()[0].delta == Point{0});
  CHECK(options[0].elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{1, 2}}))));
  CHECK(options[1].elements()[0].delta == Point{-1});
  CHECK(options[1].elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{2, 2}}))));
  CHECK(options[2].elements()[0].delta == Point{1});
  CHECK(options[2].elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{1, 1}}))));
}

TEST_CASE("single diagonal yields exactly itself as the only option") {
  IncidenceMap u({4}, {5}, {{IndexSet(MultidimensionalRange({{1, 4}})), {1}}});
  auto options = u.matchOptions();
  REQUIRE(options.size() == 1);
  CHECK(options[0].setEquals(u));
}

TEST_CASE("boolean identities") {
  test::Rng rng(7);
  IncidenceMap a = test::randomIncidenceMap(rng, {4}, {4}, 0.5);
  IncidenceMap empty({4}, {4});
  CHECK(a.subtract(a).empty());
  CHECK(a.unite(empty).setEquals(a));
  CHECK(a.intersect(a).setEquals(a));
}

TEST_CASE("subtracting a diagonal from a full 2x2 leaves the anti-diagonal") {
  IncidenceMap a = IncidenceMap::full({2}, {2});
  IncidenceMap b({2}, {2}, {{IndexSet(MultidimensionalRange({{1, 2}})), {0}}});
  IncidenceMap result = a.subtract(b);

  // Dense oracle: expand both operands and subtract element-wise.
  DenseIncidence expected =
      DenseIncidence::fromMap(a).denseSubtract(DenseIncidence::fromMap(b));
  CHECK(pairSet(result) == pairSet(expected));

  REQUIRE(result.elements().size() == 2);
  CHECK(result.elements()[0].delta == Point{-1});
  CHECK(result.elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{2, 2}}))));
  CHECK(result.elements()[1].delta == Point{1});
  CHECK(result.elements()[1].keys.setEquals(IndexSet(MultidimensionalRange({{1, 1}}))));
}

TEST_CASE("row and column broadcasts") {
  IncidenceMap a({3}, {3}, {{IndexSet(MultidimensionalRange({{1, 3}})), {0}}});
  CHECK(a.restrictRows(IndexSet::universe({3})).setEquals(a));

  IncidenceMap masked = a.restrictRows(IndexSet(MultidimensionalRange({{2, 2}})));
  REQUIRE(masked.elements().size() == 1);
  CHECK(masked.elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{2, 2}}))));

  IncidenceMap shifted({3}, {4}, {{IndexSet(MultidimensionalRange({{1, 3}})), {1}}});
  IncidenceMap columnMasked = shifted.restrictColumns(IndexSet(MultidimensionalRange({{3, 3}})));
  // Dense oracle: broadcast the column mask over all rows and intersect.
  CHECK(pairSet(columnMasked) == PairSet{{{2}, {3}}});

  CHECK_THROWS_AS(a.restrictRows(IndexSet(2)), Error);
  IncidenceMap other({4}, {3});
  CHECK_THROWS_AS(a.unite(other), Error);
}

TEST_CASE("flatten of a diagonal") {
  IncidenceMap empty({3}, {3});
  CHECK(empty.flattenRows().empty());
  CHECK(empty.flattenColumns().empty());

  IncidenceMap diag({4}, {5}, {{IndexSet(MultidimensionalRange({{1, 4}})), {1}}});
  CHECK(diag.flattenRows().setEquals(IndexSet(MultidimensionalRange({{1, 4}}))));
  CHECK(diag.flattenColumns().setEquals(IndexSet(MultidimensionalRange({{2, 5}}))));

  // The 3x3 example touches every column; verified against dense expansion.
  IncidenceMap u = exampleMatrix();
  CHECK(u.flattenColumns().setEquals(IndexSet::universe({3})));
  auto denseColumns = DenseIncidence::fromMap(u).flattenColumns();
  CHECK(denseColumns == std::vector<Point>{{1}, {2}, {3}});
}

TEST_CASE("dense round trip on random matrices") {
  test::Rng rng(20240702);
  for (int iteration = 0; iteration < 200; ++iteration) {
    Shape eqShape = test::randomShape(rng, 1, 6);
    Shape varShape = test::randomShape(rng, 1, 6);
    IncidenceMap map = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    DenseIncidence dense = DenseIncidence::fromMap(map);
    CHECK(dense.toMap().setEquals(map));
    CHECK(pairSet(dense) == pairSet(map));
  }
}

TEST_CASE("identity from dense entries compresses to one element") {
  IncidenceMap identity =
      IncidenceMap::fromPairs({3}, {3}, {{{1}, {1}}, {{2}, {2}}, {{3}, {3}}});
  REQUIRE(identity.elements().size() == 1);
  CHECK(identity.elements()[0].delta == Point{0});
  CHECK(identity.elements()[0].keys.setEquals(IndexSet(MultidimensionalRange({{1, 3}}))));
}

TEST_CASE("operations agree with the dense oracle on random instances") {
  test::Rng rng(20240703);
  for (int iteration = 0; iteration < 200; ++iteration) {
    bool twoDim = iteration % 2 == 1;
    Shape eqShape = twoDim ? test::randomShape(rng, 2, 3) : test::randomShape(rng, 1, 5);
    Shape varShape = twoDim ? test::randomShape(rng, 2, 3) : test::randomShape(rng, 1, 5);
    IncidenceMap a = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    IncidenceMap b = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    DenseIncidence da = DenseIncidence::fromMap(a);
    DenseIncidence db = DenseIncidence::fromMap(b);

    CHECK(pairSet(a.intersect(b)) == pairSet(da.denseAnd(db)));
    CHECK(pairSet(a.unite(b)) == pairSet(da.denseOr(db)));
    CHECK(pairSet(a.subtract(b)) == pairSet(da.denseSubtract(db)));

    IndexSet rowMask = test::randomIndexSet(rng, static_cast<int>(eqShape.size()),
                                            *std::max_element(eqShape.begin(), eqShape.end()))
                           .intersect(IndexSet::universe(eqShape));
    CHECK(pairSet(a.restrictRows(rowMask)) == pairSet(da.restrictRows(rowMask.points())));
    CHECK(pairSet(a.removeRows(rowMask)) == pairSet(da.removeRows(rowMask.points())));

    IndexSet columnMask = test::randomIndexSet(rng, static_cast<int>(varShape.size()),
                                               *std::max_element(varShape.begin(), varShape.end()))
                              .intersect(IndexSet::universe(varShape));
    CHECK(pairSet(a.restrictColumns(columnMask)) ==
          pairSet(da.restrictColumns(columnMask.points())));
    CHECK(pairSet(a.removeColumns(columnMask)) == pairSet(da.removeColumns(columnMask.points())));

    CHECK(a.flattenRows().points() == da.flattenRows());
    CHECK(a.flattenColumns().points() == da.flattenColumns());
  }
}

TEST_CASE("algebraic laws hold on represented sets") {
  test::Rng rng(20240704);
  for (int iteration = 0; iteration < 100; ++iteration) {
    Shape eqShape = test::randomShape(rng, 1, 5);
    Shape varShape = test::randomShape(rng, 1, 5);
    IncidenceMap a = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    IncidenceMap b = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);
    IncidenceMap c = test::randomIncidenceMap(rng, eqShape, varShape, 0.4);

    CHECK(a.unite(b).setEquals(b.unite(a)));
    CHECK(a.unite(b.unite(c)).setEquals(a.unite(b).unite(c)));
    CHECK(a.intersect(b.unite(c)).setEquals(a.intersect(b).unite(a.intersect(c))));
  }
}

TEST_CASE("match options are row- and column-injective subsets") {
  test::Rng rng(20240705);
  for (int iteration = 0; iteration < 100; ++iteration) {
    Shape eqShape = test::randomShape(rng, 1, 5);
    Shape varShape = test::randomShape(rng, 1, 5);
    IncidenceMap u = test::randomIncidenceMap(rng, eqShape, varShape, 0.5);
    auto options = u.matchOptions();
    CHECK(options.size() == u.elements().size());
    std::uint64_t previousSize = UINT64_MAX;
    for (const auto& option : options) {
      CHECK(option.intersect(u).setEquals(option)); // subset of u
      CHECK(option.flattenRows().cardinality() == option.cardinality());
      CHECK(option.flattenColumns().cardinality() == option.cardinality());
      CHECK(option.cardinality() <= previousSize); // largest first
      previousSize = option.cardinality();
    }
  }
}

TEST_CASE("distinct elements of a canonical map are disjoint") {
  test::Rng rng(20240706);
  for (int iteration = 0; iteration < 50; ++iteration) {
    IncidenceMap u = test::randomIncidenceMap(rng, {5}, {5}, 0.6);
    auto options = u.matchOptions();
    for (size_t i = 0; i < options.size(); ++i) {
      for (size_t j = i + 1; j < options.size(); ++j)
        CHECK(options[i].intersect(options[j]).empty());
    }
  }
}

TEST_CASE("mixed-arity sides get padded consistently") {
  // 2x2 equation grid against a flat variable of size 4: offsets depend on
  // the trailing equation coordinate, so each row of the grid is its own
  // diagonal.
  std::vector<std::pair<Point, Point>> pairs;
  for (Index k1 = 1; k1 <= 2; ++k1) {
    for (Index k2 = 1; k2 <= 2; ++k2)
      pairs.push_back({{k1, k2}, {k1}});
  }
  IncidenceMap map = IncidenceMap::fromPairs({2, 2}, {4}, pairs);
  CHECK(map.cardinality() == 4);
  CHECK(map.elements().size() == 2); // one diagonal per k2 value
  CHECK(map.flattenRows().setEquals(IndexSet::universe({2, 2})));
  CHECK(map.flattenColumns().setEquals(IndexSet(MultidimensionalRange({{1, 2}}))));
  CHECK(map.contains({2, 1}, {2}));
  CHECK_FALSE(map.contains({2, 1}, {3}));

  DenseIncidence dense = DenseIncidence::fromMap(map);
  CHECK(dense.toMap().setEquals(map));
}

TEST_CASE("out-of-bounds elements are rejected") {
  CHECK_THROWS_AS(IncidenceMap({2}, {2}, {{IndexSet(MultidimensionalRange({{1, 3}})), {0}}}),
                  Error);
  CHECK_THROWS_AS(IncidenceMap({2}, {2}, {{IndexSet(MultidimensionalRange({{1, 2}})), {1}}}),
                  Error);
}
