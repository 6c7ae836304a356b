#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "aamatch/array_graph.hpp"
#include "aamatch/scalar_graph.hpp"

namespace aamatch {
namespace oracle {

/// Maximum-cardinality bipartite matching; fills sg.matchedVar / matchedEq.
/// Deterministic for a given edge set (adjacency is processed sorted).
std::size_t hopcroftKarp(ScalarGraph& sg);

/// Reference maximum matching by exhaustive augmenting-path search; slow,
/// used to cross-check hopcroftKarp on small instances.
std::size_t exhaustiveMaximumMatching(ScalarGraph& sg);

/// Enumerates every maximum-cardinality matching and reports the set of
/// (eq, var) pairs common to all of them. Throws when the search exceeds
/// the node budget.
std::set<std::pair<int, int>> pairsInEveryMaximumMatching(const ScalarGraph& sg,
                                                          std::uint64_t budget = 50'000'000);

/// Same property decided per pair via a forbidden-edge matching query;
/// independent of the enumeration above.
bool pairInEveryMaximumMatchingByRemoval(const ScalarGraph& sg, int eq, int var);

struct OptimalOmegaResult {
  bool feasible = false;
  int omega = 0;            // minimal number of arcs carrying a match
  ArrayGraph witness;       // complete matching achieving it (when feasible)
  std::uint64_t statesExplored = 0;
};

/// Exhaustive minimum over all complete scalar matchings of the number of
/// arcs used, by backtracking over scalar equations with branch-and-bound.
/// `hint` (optional) must be the same graph carrying a complete matching; its
/// arc count seeds the incumbent and it becomes the witness if nothing
/// strictly better exists.
OptimalOmegaResult optimalOmega(const ArrayGraph& graph, std::uint64_t scalarEquationCap = 24,
                                const ArrayGraph* hint = nullptr,
                                std::uint64_t stateBudget = 200'000'000);

/// Dense boolean incidence matrix over multidimensional equation/variable
/// index spaces: the uncompressed twin used to check the compressed
/// operations.
class DenseIncidence {
public:
  DenseIncidence(Shape eqShape, Shape varShape);

  static DenseIncidence fromMap(const IncidenceMap& map,
                                std::uint64_t cap = kDefaultExpansionCap);
  IncidenceMap toMap() const;

  const Shape& eqShape() const { return eqShape_; }
  const Shape& varShape() const { return varShape_; }

  bool get(const Point& k, const Point& j) const;
  void set(const Point& k, const Point& j, bool value);

  DenseIncidence denseAnd(const DenseIncidence& other) const;
  DenseIncidence denseOr(const DenseIncidence& other) const;
  DenseIncidence denseSubtract(const DenseIncidence& other) const;
  DenseIncidence restrictRows(const std::vector<Point>& rows) const;
  DenseIncidence removeRows(const std::vector<Point>& rows) const;
  DenseIncidence restrictColumns(const std::vector<Point>& columns) const;
  DenseIncidence removeColumns(const std::vector<Point>& columns) const;

  std::vector<Point> flattenRows() const;
  std::vector<Point> flattenColumns() const;

  /// One option per constant-offset diagonal, mirroring the compressed
  /// realization; same ordering contract as IncidenceMap::matchOptions.
  std::vector<DenseIncidence> matchOptions() const;

  std::vector<std::pair<Point, Point>> pairs() const;
  std::uint64_t count() const;
  bool operator==(const DenseIncidence& other) const;

private:
  std::uint64_t linearEq(const Point& k) const;
  std::uint64_t linearVar(const Point& j) const;

  Shape eqShape_;
  Shape varShape_;
  std::uint64_t eqVolume_ = 0;
  std::uint64_t varVolume_ = 0;
  std::vector<char> bits_;
};

} // namespace oracle
} // namespace aamatch
