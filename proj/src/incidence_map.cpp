#include "aamatch/incidence_map.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "aamatch/error.hpp"

namespace aamatch {

namespace {

void checkShape(const Shape& shape, const char* what) {
  if (shape.empty())
    throwError(ErrorKind::InvalidArgument, std::string(what) + ": shape must be non-empty");
  for (Index s : shape) {
    if (s < 1)
      throwError(ErrorKind::InvalidArgument, std::string(what) + ": sizes must be positive");
  }
}

Point paddedPoint(const Point& p, int rank) {
  Point out = p;
  out.resize(static_cast<size_t>(rank), 1);
  return out;
}

Shape paddedShape(const Shape& s, int rank) {
  Shape out = s;
  out.resize(static_cast<size_t>(rank), 1);
  return out;
}

} // namespace

IncidenceMap::IncidenceMap(Shape eqShape, Shape varShape)
    : eqShape_(std::move(eqShape)), varShape_(std::move(varShape)) {
  checkShape(eqShape_, "incidence map equation side");
  checkShape(varShape_, "incidence map variable side");
  paddedRank_ = static_cast<int>(std::max(eqShape_.size(), varShape_.size()));
}

IncidenceMap::IncidenceMap(Shape eqShape, Shape varShape, std::vector<Element> elements)
    : IncidenceMap(std::move(eqShape), std::move(varShape)) {
  elements_ = std::move(elements);
  canonicalize();
  checkBounds();
}

IncidenceMap IncidenceMap::fromPairs(Shape eqShape, Shape varShape,
                                     const std::vector<std::pair<Point, Point>>& pairs) {
  IncidenceMap result(std::move(eqShape), std::move(varShape));
  int rank = result.paddedRank_;
  std::map<Point, std::vector<Point>> keysByDelta;
  for (const auto& [k, j] : pairs) {
    if (k.size() != result.eqShape_.size() || j.size() != result.varShape_.size())
      throwError(ErrorKind::InvalidArgument, "incidence pair arity does not match shapes");
    Point pk = paddedPoint(k, rank);
    Point pj = paddedPoint(j, rank);
    Point delta(static_cast<size_t>(rank));
    for (int d = 0; d < rank; ++d)
      delta[static_cast<size_t>(d)] = pj[static_cast<size_t>(d)] - pk[static_cast<size_t>(d)];
    keysByDelta[delta].push_back(std::move(pk));
  }
  for (auto& [delta, keyPoints] : keysByDelta)
    result.elements_.push_back({IndexSet::fromPoints(rank, keyPoints), delta});
  result.canonicalize();
  result.checkBounds();
  return result;
}

IncidenceMap IncidenceMap::full(Shape eqShape, Shape varShape) {
  IncidenceMap result(std::move(eqShape), std::move(varShape));
  int rank = result.paddedRank_;
  Shape eq = paddedShape(result.eqShape_, rank);
  Shape var = paddedShape(result.varShape_, rank);

  std::uint64_t deltaCount = 1;
  for (int d = 0; d < rank; ++d)
    deltaCount *= static_cast<std::uint64_t>(eq[static_cast<size_t>(d)] +
                                             var[static_cast<size_t>(d)] - 1);
  if (deltaCount > kDefaultExpansionCap)
    throwError(ErrorKind::LimitExceeded, "full incidence map would need too many diagonals");

  IndexSet eqUniverse = IndexSet::universe(eq);
  Point delta(static_cast<size_t>(rank));
  for (int d = 0; d < rank; ++d)
    delta[static_cast<size_t>(d)] = 1 - eq[static_cast<size_t>(d)];
  while (true) {
    Point negDelta = delta;
    for (auto& v : negDelta)
      v = -v;
    IndexSet keys = IndexSet::universe(var).offset(negDelta).intersect(eqUniverse);
    if (!keys.empty())
      result.elements_.push_back({std::move(keys), delta});
    int d = rank - 1;
    while (d >= 0) {
      if (delta[static_cast<size_t>(d)] < var[static_cast<size_t>(d)] - 1) {
        ++delta[static_cast<size_t>(d)];
        break;
      }
      delta[static_cast<size_t>(d)] = 1 - eq[static_cast<size_t>(d)];
      --d;
    }
    if (d < 0)
      break;
  }
  result.canonicalize();
  return result;
}

void IncidenceMap::canonicalize() {
  std::map<Point, IndexSet> byDelta;
  for (auto& element : elements_) {
    if (static_cast<int>(element.delta.size()) != paddedRank_)
      throwError(ErrorKind::InvalidArgument, "element delta arity does not match padded rank");
    if (element.keys.rank() != paddedRank_)
      throwError(ErrorKind::InvalidArgument, "element keys rank does not match padded rank");
    if (element.keys.empty())
      continue;
    auto it = byDelta.find(element.delta);
    if (it == byDelta.end())
      byDelta.emplace(element.delta, std::move(element.keys));
    else
      it->second = it->second.unite(element.keys);
  }
  elements_.clear();
  for (auto& [delta, keys] : byDelta)
    elements_.push_back({std::move(keys), delta});
}

void IncidenceMap::checkBounds() const {
  IndexSet eqUniverse = IndexSet::universe(paddedShape(eqShape_, paddedRank_));
  IndexSet varUniverse = IndexSet::universe(paddedShape(varShape_, paddedRank_));
  for (const auto& element : elements_) {
    if (!element.keys.subtract(eqUniverse).empty())
      throwError(ErrorKind::Validation,
                 "incidence map keys outside the equation index space: " +
                     element.keys.toString());
    if (!element.keys.offset(element.delta).subtract(varUniverse).empty())
      throwError(ErrorKind::Validation,
                 "incidence map entries outside the variable index space (delta " +
                     pointToString(element.delta) + ")");
  }
}

std::uint64_t IncidenceMap::cardinality() const {
  std::uint64_t total = 0;
  for (const auto& element : elements_)
    total += element.keys.cardinality();
  return total;
}

bool IncidenceMap::contains(const Point& eqIndex, const Point& varIndex) const {
  if (eqIndex.size() != eqShape_.size() || varIndex.size() != varShape_.size())
    throwError(ErrorKind::InvalidArgument, "index arity does not match incidence map shapes");
  Point pk = paddedPoint(eqIndex, paddedRank_);
  Point pj = paddedPoint(varIndex, paddedRank_);
  Point delta(static_cast<size_t>(paddedRank_));
  for (int d = 0; d < paddedRank_; ++d)
    delta[static_cast<size_t>(d)] = pj[static_cast<size_t>(d)] - pk[static_cast<size_t>(d)];
  for (const auto& element : elements_) {
    if (element.delta == delta)
      return element.keys.contains(pk);
  }
  return false;
}

bool IncidenceMap::sameShapes(const IncidenceMap& other) const {
  return eqShape_ == other.eqShape_ && varShape_ == other.varShape_;
}

namespace {

void requireSameShapes(const IncidenceMap& a, const IncidenceMap& b, const char* what) {
  if (!a.sameShapes(b))
    throwError(ErrorKind::InvalidArgument, std::string(what) + ": shape mismatch");
}

} // namespace

IncidenceMap IncidenceMap::intersect(const IncidenceMap& other) const {
  requireSameShapes(*this, other, "incidence map intersection");
  std::vector<Element> out;
  for (const auto& a : elements_) {
    for (const auto& b : other.elements_) {
      if (a.delta == b.delta) {
        out.push_back({a.keys.intersect(b.keys), a.delta});
        break;
      }
    }
  }
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IncidenceMap IncidenceMap::unite(const IncidenceMap& other) const {
  requireSameShapes(*this, other, "incidence map union");
  std::vector<Element> out = elements_;
  out.insert(out.end(), other.elements_.begin(), other.elements_.end());
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IncidenceMap IncidenceMap::subtract(const IncidenceMap& other) const {
  requireSameShapes(*this, other, "incidence map subtraction");
  std::vector<Element> out;
  for (const auto& a : elements_) {
    const IndexSet* toRemove = nullptr;
    for (const auto& b : other.elements_) {
      if (a.delta == b.delta) {
        toRemove = &b.keys;
        break;
      }
    }
    out.push_back({toRemove ? a.keys.subtract(*toRemove) : a.keys, a.delta});
  }
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IndexSet IncidenceMap::paddedRowFilter(const IndexSet& rows) const {
  if (rows.rank() != static_cast<int>(eqShape_.size()))
    throwError(ErrorKind::InvalidArgument, "row filter rank does not match the equation side");
  return rows.padded(paddedRank_);
}

IndexSet IncidenceMap::paddedColumnFilter(const IndexSet& columns) const {
  if (columns.rank() != static_cast<int>(varShape_.size()))
    throwError(ErrorKind::InvalidArgument, "column filter rank does not match the variable side");
  return columns.padded(paddedRank_);
}

IncidenceMap IncidenceMap::restrictRows(const IndexSet& rows) const {
  IndexSet filter = paddedRowFilter(rows);
  std::vector<Element> out;
  for (const auto& element : elements_)
    out.push_back({element.keys.intersect(filter), element.delta});
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IncidenceMap IncidenceMap::removeRows(const IndexSet& rows) const {
  IndexSet filter = paddedRowFilter(rows);
  std::vector<Element> out;
  for (const auto& element : elements_)
    out.push_back({element.keys.subtract(filter), element.delta});
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IncidenceMap IncidenceMap::restrictColumns(const IndexSet& columns) const {
  IndexSet filter = paddedColumnFilter(columns);
  std::vector<Element> out;
  for (const auto& element : elements_) {
    Point negDelta = element.delta;
    for (auto& v : negDelta)
      v = -v;
    out.push_back({element.keys.intersect(filter.offset(negDelta)), element.delta});
  }
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IncidenceMap IncidenceMap::removeColumns(const IndexSet& columns) const {
  IndexSet filter = paddedColumnFilter(columns);
  std::vector<Element> out;
  for (const auto& element : elements_) {
    Point negDelta = element.delta;
    for (auto& v : negDelta)
      v = -v;
    out.push_back({element.keys.subtract(filter.offset(negDelta)), element.delta});
  }
  return IncidenceMap(eqShape_, varShape_, std::move(out));
}

IndexSet IncidenceMap::flattenRows() const {
  IndexSet rows(paddedRank_);
  for (const auto& element : elements_)
    rows = rows.unite(element.keys);
  return rows.dropTrailing(static_cast<int>(eqShape_.size()));
}

IndexSet IncidenceMap::flattenColumns() const {
  IndexSet columns(paddedRank_);
  for (const auto& element : elements_)
    columns = columns.unite(element.keys.offset(element.delta));
  return columns.dropTrailing(static_cast<int>(varShape_.size()));
}

std::vector<IncidenceMap> IncidenceMap::matchOptions() const {
  std::vector<const Element*> order;
  order.reserve(elements_.size());
  for (const auto& element : elements_)
    order.push_back(&element);
  std::stable_sort(order.begin(), order.end(), [](const Element* a, const Element* b) {
    std::uint64_t ca = a->keys.cardinality();
    std::uint64_t cb = b->keys.cardinality();
    if (ca != cb)
      return ca > cb;
    return a->delta < b->delta;
  });
  std::vector<IncidenceMap> options;
  options.reserve(order.size());
  for (const Element* element : order)
    options.push_back(IncidenceMap(eqShape_, varShape_, {*element}));
  return options;
}

std::vector<std::pair<Point, Point>> IncidenceMap::pairs(std::uint64_t cap) const {
  if (cardinality() > cap)
    throwError(ErrorKind::LimitExceeded,
               "incidence map too large to expand (" + std::to_string(cardinality()) +
                   " entries, cap " + std::to_string(cap) + ")");
  std::vector<std::pair<Point, Point>> out;
  out.reserve(static_cast<size_t>(cardinality()));
  for (const auto& element : elements_) {
    element.keys.forEachPoint([&](const Point& k) {
      Point j(static_cast<size_t>(paddedRank_));
      for (int d = 0; d < paddedRank_; ++d)
        j[static_cast<size_t>(d)] = k[static_cast<size_t>(d)] + element.delta[static_cast<size_t>(d)];
      Point eqIndex(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(eqShape_.size()));
      Point varIndex(j.begin(), j.begin() + static_cast<std::ptrdiff_t>(varShape_.size()));
      out.emplace_back(std::move(eqIndex), std::move(varIndex));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool IncidenceMap::setEquals(const IncidenceMap& other) const {
  if (!sameShapes(other))
    return false;
  if (elements_.size() != other.elements_.size())
    return false;
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].delta != other.elements_[i].delta)
      return false;
    if (!elements_[i].keys.setEquals(other.elements_[i].keys))
      return false;
  }
  return true;
}

int IncidenceMap::compareRepresentation(const IncidenceMap& other) const {
  size_t n = std::min(elements_.size(), other.elements_.size());
  for (size_t i = 0; i < n; ++i) {
    if (elements_[i].delta != other.elements_[i].delta)
      return elements_[i].delta < other.elements_[i].delta ? -1 : 1;
    int c = elements_[i].keys.compareRepresentation(other.elements_[i].keys);
    if (c != 0)
      return c;
  }
  if (elements_.size() != other.elements_.size())
    return elements_.size() < other.elements_.size() ? -1 : 1;
  return 0;
}

std::string IncidenceMap::toString() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0)
      os << ',';
    os << "(K=" << elements_[i].keys.toString() << ", d=" << pointToString(elements_[i].delta)
       << ')';
  }
  os << ']';
  return os.str();
}

} // namespace aamatch
