#include "aamatch/index_set.hpp"

#include <algorithm>
#include <sstream>

#include "aamatch/error.hpp"

namespace aamatch {

namespace {

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0)
    return 0;
  if (a > UINT64_MAX / b)
    return UINT64_MAX;
  return a * b;
}

void requireSameRank(int a, int b, const char* what) {
  if (a != b)
    throwError(ErrorKind::InvalidArgument,
               std::string(what) + ": dimensionality mismatch (" + std::to_string(a) + " vs " +
                   std::to_string(b) + ")");
}

} // namespace

std::uint64_t shapeVolume(const Shape& shape) {
  std::uint64_t v = 1;
  for (Index s : shape)
    v = saturatingMul(v, static_cast<std::uint64_t>(s));
  return v;
}

std::string pointToString(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < p.size(); ++i) {
    if (i > 0)
      os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

MultidimensionalRange::MultidimensionalRange(std::vector<std::pair<Index, Index>> bounds)
    : bounds_(std::move(bounds)) {
  if (bounds_.empty())
    throwError(ErrorKind::InvalidArgument, "range must have at least one dimension");
  for (const auto& [lo, hi] : bounds_) {
    if (lo > hi)
      throwError(ErrorKind::InvalidArgument,
                 "range bound " + std::to_string(lo) + " > " + std::to_string(hi));
  }
}

MultidimensionalRange MultidimensionalRange::unit(const Point& p) {
  std::vector<std::pair<Index, Index>> bounds;
  bounds.reserve(p.size());
  for (Index v : p)
    bounds.emplace_back(v, v);
  return MultidimensionalRange(std::move(bounds));
}

MultidimensionalRange MultidimensionalRange::full(const Shape& sizes) {
  std::vector<std::pair<Index, Index>> bounds;
  bounds.reserve(sizes.size());
  for (Index s : sizes) {
    if (s < 1)
      throwError(ErrorKind::InvalidArgument, "shape sizes must be positive");
    bounds.emplace_back(1, s);
  }
  return MultidimensionalRange(std::move(bounds));
}

std::uint64_t MultidimensionalRange::volume() const {
  std::uint64_t v = 1;
  for (const auto& [lo, hi] : bounds_)
    v = saturatingMul(v, static_cast<std::uint64_t>(hi - lo + 1));
  return v;
}

bool MultidimensionalRange::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != rank())
    throwError(ErrorKind::InvalidArgument, "point arity does not match range rank");
  for (int d = 0; d < rank(); ++d) {
    if (p[static_cast<size_t>(d)] < lo(d) || p[static_cast<size_t>(d)] > hi(d))
      return false;
  }
  return true;
}

bool MultidimensionalRange::overlaps(const MultidimensionalRange& other) const {
  requireSameRank(rank(), other.rank(), "range overlap");
  for (int d = 0; d < rank(); ++d) {
    if (hi(d) < other.lo(d) || other.hi(d) < lo(d))
      return false;
  }
  return true;
}

std::optional<MultidimensionalRange>
MultidimensionalRange::intersect(const MultidimensionalRange& other) const {
  if (!overlaps(other))
    return std::nullopt;
  std::vector<std::pair<Index, Index>> bounds;
  bounds.reserve(bounds_.size());
  for (int d = 0; d < rank(); ++d)
    bounds.emplace_back(std::max(lo(d), other.lo(d)), std::min(hi(d), other.hi(d)));
  return MultidimensionalRange(std::move(bounds));
}

std::vector<MultidimensionalRange>
MultidimensionalRange::subtract(const MultidimensionalRange& other) const {
  requireSameRank(rank(), other.rank(), "range subtract");
  if (!overlaps(other))
    return {*this};

  // Guillotine split: per dimension, peel off the parts strictly below and
  // strictly above the overlap, then narrow the working box to the overlap.
  std::vector<MultidimensionalRange> pieces;
  std::vector<std::pair<Index, Index>> current = bounds_;
  for (int d = 0; d < rank(); ++d) {
    auto& [curLo, curHi] = current[static_cast<size_t>(d)];
    Index cutLo = std::max(curLo, other.lo(d));
    Index cutHi = std::min(curHi, other.hi(d));
    if (curLo < cutLo) {
      auto piece = current;
      piece[static_cast<size_t>(d)] = {curLo, cutLo - 1};
      pieces.emplace_back(std::move(piece));
    }
    if (cutHi < curHi) {
      auto piece = current;
      piece[static_cast<size_t>(d)] = {cutHi + 1, curHi};
      pieces.emplace_back(std::move(piece));
    }
    curLo = cutLo;
    curHi = cutHi;
  }
  return pieces;
}

MultidimensionalRange MultidimensionalRange::offset(const Point& delta) const {
  if (static_cast<int>(delta.size()) != rank())
    throwError(ErrorKind::InvalidArgument, "offset arity does not match range rank");
  std::vector<std::pair<Index, Index>> bounds;
  bounds.reserve(bounds_.size());
  for (int d = 0; d < rank(); ++d)
    bounds.emplace_back(lo(d) + delta[static_cast<size_t>(d)],
                        hi(d) + delta[static_cast<size_t>(d)]);
  return MultidimensionalRange(std::move(bounds));
}

MultidimensionalRange MultidimensionalRange::padded(int rank) const {
  if (rank < this->rank())
    throwError(ErrorKind::InvalidArgument, "cannot pad to a smaller rank");
  auto bounds = bounds_;
  bounds.resize(static_cast<size_t>(rank), {1, 1});
  return MultidimensionalRange(std::move(bounds));
}

MultidimensionalRange MultidimensionalRange::dropTrailing(int rank) const {
  if (rank > this->rank() || rank < 1)
    throwError(ErrorKind::InvalidArgument, "invalid target rank for dropTrailing");
  for (int d = rank; d < this->rank(); ++d) {
    if (lo(d) != 1 || hi(d) != 1)
      throwError(ErrorKind::Internal, "dropTrailing on a non-unit padded dimension");
  }
  auto bounds = bounds_;
  bounds.resize(static_cast<size_t>(rank));
  return MultidimensionalRange(std::move(bounds));
}

void MultidimensionalRange::forEachPoint(const std::function<void(const Point&)>& fn) const {
  Point p;
  p.reserve(bounds_.size());
  for (const auto& [lo, hi] : bounds_)
    p.push_back(lo);
  while (true) {
    fn(p);
    int d = rank() - 1;
    while (d >= 0) {
      if (p[static_cast<size_t>(d)] < hi(d)) {
        ++p[static_cast<size_t>(d)];
        break;
      }
      p[static_cast<size_t>(d)] = lo(d);
      --d;
    }
    if (d < 0)
      break;
  }
}

std::vector<Point> MultidimensionalRange::points() const {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(volume()));
  forEachPoint([&](const Point& p) { out.push_back(p); });
  return out;
}

std::string MultidimensionalRange::toString() const {
  std::ostringstream os;
  os << '{';
  for (size_t d = 0; d < bounds_.size(); ++d) {
    if (d > 0)
      os << ',';
    os << '[' << bounds_[d].first << ',' << bounds_[d].second << ']';
  }
  os << '}';
  return os.str();
}

IndexSet::IndexSet(int rank) : rank_(rank) {
  if (rank < 1)
    throwError(ErrorKind::InvalidArgument, "index set rank must be positive");
}

IndexSet::IndexSet(MultidimensionalRange range) : rank_(range.rank()) {
  ranges_.push_back(std::move(range));
}

IndexSet::IndexSet(int rank, std::vector<MultidimensionalRange> ranges)
    : rank_(rank), ranges_(std::move(ranges)) {
  if (rank < 1)
    throwError(ErrorKind::InvalidArgument, "index set rank must be positive");
  for (const auto& r : ranges_)
    requireSameRank(r.rank(), rank_, "index set range");
  canonicalize();
}

IndexSet IndexSet::universe(const Shape& sizes) {
  return IndexSet(MultidimensionalRange::full(sizes));
}

IndexSet IndexSet::fromPoints(int rank, const std::vector<Point>& points) {
  std::vector<MultidimensionalRange> ranges;
  ranges.reserve(points.size());
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != rank)
      throwError(ErrorKind::InvalidArgument, "point arity does not match index set rank");
    ranges.push_back(MultidimensionalRange::unit(p));
  }
  return IndexSet(rank, std::move(ranges));
}

void IndexSet::canonicalize() {
  // Disjointify: each range keeps only the part not covered by earlier ones.
  std::vector<MultidimensionalRange> disjoint;
  for (const auto& range : ranges_) {
    std::vector<MultidimensionalRange> pieces{range};
    for (const auto& existing : disjoint) {
      std::vector<MultidimensionalRange> next;
      for (const auto& piece : pieces) {
        auto sub = piece.subtract(existing);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces = std::move(next);
      if (pieces.empty())
        break;
    }
    disjoint.insert(disjoint.end(), pieces.begin(), pieces.end());
  }

  // Merge pairs that differ in exactly one dimension and touch there.
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < disjoint.size() && !merged; ++i) {
      for (size_t j = i + 1; j < disjoint.size() && !merged; ++j) {
        const auto& a = disjoint[i];
        const auto& b = disjoint[j];
        int differing = -1;
        bool mergeable = true;
        for (int d = 0; d < rank_; ++d) {
          if (a.lo(d) == b.lo(d) && a.hi(d) == b.hi(d))
            continue;
          if (differing >= 0) {
            mergeable = false;
            break;
          }
          differing = d;
        }
        if (!mergeable || differing < 0)
          continue;
        int d = differing;
        if (a.hi(d) + 1 == b.lo(d) || b.hi(d) + 1 == a.lo(d)) {
          auto bounds = a.bounds();
          bounds[static_cast<size_t>(d)] = {std::min(a.lo(d), b.lo(d)),
                                            std::max(a.hi(d), b.hi(d))};
          disjoint.erase(disjoint.begin() + static_cast<std::ptrdiff_t>(j));
          disjoint.erase(disjoint.begin() + static_cast<std::ptrdiff_t>(i));
          disjoint.push_back(MultidimensionalRange(std::move(bounds)));
          merged = true;
        }
      }
    }
  }

  std::sort(disjoint.begin(), disjoint.end());
  ranges_ = std::move(disjoint);
}

std::uint64_t IndexSet::cardinality() const {
  std::uint64_t total = 0;
  for (const auto& r : ranges_)
    total += r.volume();
  return total;
}

bool IndexSet::contains(const Point& p) const {
  for (const auto& r : ranges_) {
    if (r.contains(p))
      return true;
  }
  return false;
}

IndexSet IndexSet::unite(const IndexSet& other) const {
  requireSameRank(rank_, other.rank_, "index set union");
  auto ranges = ranges_;
  ranges.insert(ranges.end(), other.ranges_.begin(), other.ranges_.end());
  return IndexSet(rank_, std::move(ranges));
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  requireSameRank(rank_, other.rank_, "index set intersection");
  std::vector<MultidimensionalRange> ranges;
  for (const auto& a : ranges_) {
    for (const auto& b : other.ranges_) {
      if (auto common = a.intersect(b))
        ranges.push_back(std::move(*common));
    }
  }
  return IndexSet(rank_, std::move(ranges));
}

IndexSet IndexSet::subtract(const IndexSet& other) const {
  requireSameRank(rank_, other.rank_, "index set difference");
  std::vector<MultidimensionalRange> result;
  for (const auto& a : ranges_) {
    std::vector<MultidimensionalRange> pieces{a};
    for (const auto& b : other.ranges_) {
      std::vector<MultidimensionalRange> next;
      for (const auto& piece : pieces) {
        auto sub = piece.subtract(b);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces = std::move(next);
      if (pieces.empty())
        break;
    }
    result.insert(result.end(), pieces.begin(), pieces.end());
  }
  return IndexSet(rank_, std::move(result));
}

IndexSet IndexSet::offset(const Point& delta) const {
  if (static_cast<int>(delta.size()) != rank_)
    throwError(ErrorKind::InvalidArgument, "offset arity does not match index set rank");
  std::vector<MultidimensionalRange> ranges;
  ranges.reserve(ranges_.size());
  for (const auto& r : ranges_)
    ranges.push_back(r.offset(delta));
  return IndexSet(rank_, std::move(ranges));
}

IndexSet IndexSet::padded(int rank) const {
  if (rank == rank_)
    return *this;
  std::vector<MultidimensionalRange> ranges;
  ranges.reserve(ranges_.size());
  for (const auto& r : ranges_)
    ranges.push_back(r.padded(rank));
  return IndexSet(rank, std::move(ranges));
}

IndexSet IndexSet::dropTrailing(int rank) const {
  if (rank == rank_)
    return *this;
  std::vector<MultidimensionalRange> ranges;
  ranges.reserve(ranges_.size());
  for (const auto& r : ranges_)
    ranges.push_back(r.dropTrailing(rank));
  return IndexSet(rank, std::move(ranges));
}

bool IndexSet::setEquals(const IndexSet& other) const {
  if (rank_ != other.rank_)
    return false;
  if (cardinality() != other.cardinality())
    return false;
  return subtract(other).empty() && other.subtract(*this).empty();
}

bool IndexSet::intersects(const IndexSet& other) const {
  requireSameRank(rank_, other.rank_, "index set intersection test");
  for (const auto& a : ranges_) {
    for (const auto& b : other.ranges_) {
      if (a.overlaps(b))
        return true;
    }
  }
  return false;
}

void IndexSet::forEachPoint(const std::function<void(const Point&)>& fn) const {
  for (const auto& r : ranges_)
    r.forEachPoint(fn);
}

std::vector<Point> IndexSet::points() const {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(cardinality()));
  forEachPoint([&](const Point& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

int IndexSet::compareRepresentation(const IndexSet& other) const {
  if (rank_ != other.rank_)
    return rank_ < other.rank_ ? -1 : 1;
  if (ranges_ < other.ranges_)
    return -1;
  if (other.ranges_ < ranges_)
    return 1;
  return 0;
}

std::string IndexSet::toString() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < ranges_.size(); ++i) {
    if (i > 0)
      os << ',';
    os << ranges_[i].toString();
  }
  os << '}';
  return os.str();
}

} // namespace aamatch
