#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aamatch {

using Index = std::int64_t;
/// One integer per dimension. Graph-level indices are 1-based; intermediate
/// results of offsets may temporarily leave the 1-based universe.
using Point = std::vector<Index>;
/// Per-dimension sizes of an array node.
using Shape = std::vector<Index>;

std::uint64_t shapeVolume(const Shape& shape);
std::string pointToString(const Point& p);

/// Inclusive hyperrectangle: the Cartesian product [lo1,hi1] x [lo2,hi2] x ...
/// Always non-empty (lo <= hi per dimension).
class MultidimensionalRange {
public:
  explicit MultidimensionalRange(std::vector<std::pair<Index, Index>> bounds);

  static MultidimensionalRange unit(const Point& p);
  static MultidimensionalRange full(const Shape& sizes);

  int rank() const { return static_cast<int>(bounds_.size()); }
  Index lo(int dim) const { return bounds_[static_cast<size_t>(dim)].first; }
  Index hi(int dim) const { return bounds_[static_cast<size_t>(dim)].second; }
  const std::vector<std::pair<Index, Index>>& bounds() const { return bounds_; }

  std::uint64_t volume() const;
  bool contains(const Point& p) const;
  bool overlaps(const MultidimensionalRange& other) const;
  std::optional<MultidimensionalRange> intersect(const MultidimensionalRange& other) const;

  /// Disjoint pieces covering exactly this \ other.
  std::vector<MultidimensionalRange> subtract(const MultidimensionalRange& other) const;

  MultidimensionalRange offset(const Point& delta) const;
  /// Appends size-1 dimensions at index 1 until the given rank.
  MultidimensionalRange padded(int rank) const;
  /// Drops trailing dimensions down to the given rank; they must all be (1,1).
  MultidimensionalRange dropTrailing(int rank) const;

  void forEachPoint(const std::function<void(const Point&)>& fn) const;
  std::vector<Point> points() const;

  bool operator==(const MultidimensionalRange& other) const { return bounds_ == other.bounds_; }
  /// Lexicographic order on (lower corner, upper corner); used for canonical sorting.
  bool operator<(const MultidimensionalRange& other) const { return bounds_ < other.bounds_; }

  std::string toString() const;

private:
  std::vector<std::pair<Index, Index>> bounds_;
};

/// A set of multidimensional indices stored as a union of pairwise disjoint
/// hyperrectangles. Canonical form keeps ranges disjoint, merged where a pair
/// differs in a single dimension, and sorted by lower corner. Equality is on
/// the represented set, not on the particular range partition.
class IndexSet {
public:
  explicit IndexSet(int rank);
  IndexSet(MultidimensionalRange range); // NOLINT(google-explicit-constructor)
  IndexSet(int rank, std::vector<MultidimensionalRange> ranges);

  static IndexSet universe(const Shape& sizes);
  static IndexSet fromPoints(int rank, const std::vector<Point>& points);

  int rank() const { return rank_; }
  bool empty() const { return ranges_.empty(); }
  std::uint64_t cardinality() const;
  bool contains(const Point& p) const;
  const std::vector<MultidimensionalRange>& ranges() const { return ranges_; }

  IndexSet unite(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  IndexSet subtract(const IndexSet& other) const;
  IndexSet offset(const Point& delta) const;
  IndexSet padded(int rank) const;
  IndexSet dropTrailing(int rank) const;

  bool setEquals(const IndexSet& other) const;
  bool intersects(const IndexSet& other) const;

  void forEachPoint(const std::function<void(const Point&)>& fn) const;
  /// Explicit enumeration; intended for oracle and test use at small sizes.
  std::vector<Point> points() const;

  /// Total order on the stored representation, for deterministic tie-breaks.
  int compareRepresentation(const IndexSet& other) const;

  bool operator==(const IndexSet& other) const { return setEquals(other); }

  std::string toString() const;

private:
  void canonicalize();

  int rank_ = 0;
  std::vector<MultidimensionalRange> ranges_;
};

} // namespace aamatch
