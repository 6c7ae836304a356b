#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aamatch/index_set.hpp"

namespace aamatch {

/// Default cap on explicit scalar expansion of compressed structures.
inline constexpr std::uint64_t kDefaultExpansionCap = 1'000'000;

/// Compressed boolean incidence matrix between an equation-side index space
/// and a variable-side index space. Stored as constant-offset diagonals: each
/// element is a set of equation indices K plus an offset delta such that the
/// represented pairs are { (k, k + delta) : k in K }.
///
/// When the two sides have different dimensionality, the lower-arity side is
/// implicitly padded with trailing size-1 dimensions so the offset is well
/// defined; keys and deltas are stored at the padded rank.
class IncidenceMap {
public:
  struct Element {
    IndexSet keys; // over the padded equation space
    Point delta;   // padded rank
  };

  IncidenceMap(Shape eqShape, Shape varShape);
  IncidenceMap(Shape eqShape, Shape varShape, std::vector<Element> elements);

  static IncidenceMap fromPairs(Shape eqShape, Shape varShape,
                                const std::vector<std::pair<Point, Point>>& pairs);
  /// Full incidence: every equation index paired with every variable index.
  static IncidenceMap full(Shape eqShape, Shape varShape);

  const Shape& eqShape() const { return eqShape_; }
  const Shape& varShape() const { return varShape_; }
  int paddedRank() const { return paddedRank_; }
  const std::vector<Element>& elements() const { return elements_; }

  bool empty() const { return elements_.empty(); }
  std::uint64_t cardinality() const;
  bool contains(const Point& eqIndex, const Point& varIndex) const;

  /// Element-wise boolean operations on the represented pair sets.
  IncidenceMap intersect(const IncidenceMap& other) const;
  IncidenceMap unite(const IncidenceMap& other) const;
  IncidenceMap subtract(const IncidenceMap& other) const;

  /// Row/column vector broadcasts: the filter set masks one side of the map.
  IncidenceMap restrictRows(const IndexSet& rows) const;
  IncidenceMap removeRows(const IndexSet& rows) const;
  IncidenceMap restrictColumns(const IndexSet& columns) const;
  IncidenceMap removeColumns(const IndexSet& columns) const;

  /// Indices with at least one pair, on the equation / variable side.
  IndexSet flattenRows() const;
  IndexSet flattenColumns() const;

  /// Match options: one single-diagonal map per element, each a valid local
  /// matching (row- and column-injective subset of this map). Ordered by
  /// descending key cardinality, ties by ascending delta, so the largest
  /// option comes first and runs are reproducible.
  std::vector<IncidenceMap> matchOptions() const;

  /// Explicit pair enumeration; oracle/test scale only.
  std::vector<std::pair<Point, Point>> pairs(std::uint64_t cap = kDefaultExpansionCap) const;

  bool setEquals(const IncidenceMap& other) const;
  bool sameShapes(const IncidenceMap& other) const;

  /// Total order on the stored representation, for deterministic tie-breaks.
  int compareRepresentation(const IncidenceMap& other) const;

  std::string toString() const;

private:
  void canonicalize();
  void checkBounds() const;
  IndexSet paddedRowFilter(const IndexSet& rows) const;
  IndexSet paddedColumnFilter(const IndexSet& columns) const;

  Shape eqShape_;
  Shape varShape_;
  int paddedRank_ = 0;
  std::vector<Element> elements_; // sorted by delta, unique deltas, non-empty keys
};

} // namespace aamatch
