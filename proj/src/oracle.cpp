#include "aamatch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "aamatch/error.hpp"

namespace aamatch {
namespace oracle {

std::size_t hopcroftKarp(ScalarGraph& sg) {
  const int nL = static_cast<int>(sg.equations.size());
  const auto adj = sg.equationAdjacency();
  sg.clearMatching();

  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<size_t>(nL), kInf);

  auto bfs = [&]() {
    std::queue<int> queue;
    bool reachable = false;
    for (int u = 0; u < nL; ++u) {
      if (sg.matchedVar[static_cast<size_t>(u)] < 0) {
        dist[static_cast<size_t>(u)] = 0;
        queue.push(u);
      } else {
        dist[static_cast<size_t>(u)] = kInf;
      }
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int v : adj[static_cast<size_t>(u)]) {
        int w = sg.matchedEq[static_cast<size_t>(v)];
        if (w < 0) {
          reachable = true;
        } else if (dist[static_cast<size_t>(w)] == kInf) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          queue.push(w);
        }
      }
    }
    return reachable;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int v : adj[static_cast<size_t>(u)]) {
      int w = sg.matchedEq[static_cast<size_t>(v)];
      if (w < 0 || (dist[static_cast<size_t>(w)] == dist[static_cast<size_t>(u)] + 1 && dfs(w))) {
        sg.matchedVar[static_cast<size_t>(u)] = v;
        sg.matchedEq[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<size_t>(u)] = kInf;
    return false;
  };

  std::size_t total = 0;
  while (bfs()) {
    for (int u = 0; u < nL; ++u) {
      if (sg.matchedVar[static_cast<size_t>(u)] < 0 && dfs(u))
        ++total;
    }
  }
  return total;
}

std::size_t exhaustiveMaximumMatching(ScalarGraph& sg) {
  const int nL = static_cast<int>(sg.equations.size());
  const auto adj = sg.equationAdjacency();
  std::vector<int> best(static_cast<size_t>(nL), -1);
  std::vector<int> current(static_cast<size_t>(nL), -1);
  std::vector<char> used(sg.variables.size(), 0);
  std::size_t bestCount = 0;

  std::function<void(int, std::size_t)> search = [&](int u, std::size_t count) {
    if (count + static_cast<std::size_t>(nL - u) <= bestCount && bestCount > 0)
      return;
    if (u == nL) {
      if (count > bestCount) {
        bestCount = count;
        best = current;
      }
      return;
    }
    for (int v : adj[static_cast<size_t>(u)]) {
      if (!used[static_cast<size_t>(v)]) {
        used[static_cast<size_t>(v)] = 1;
        current[static_cast<size_t>(u)] = v;
        search(u + 1, count + 1);
        current[static_cast<size_t>(u)] = -1;
        used[static_cast<size_t>(v)] = 0;
      }
    }
    search(u + 1, count);
  };
  search(0, 0);

  sg.clearMatching();
  for (int u = 0; u < nL; ++u) {
    if (best[static_cast<size_t>(u)] >= 0)
      sg.setMatch(u, best[static_cast<size_t>(u)]);
  }
  return bestCount;
}

std::set<std::pair<int, int>> pairsInEveryMaximumMatching(const ScalarGraph& sg,
                                                          std::uint64_t budget) {
  ScalarGraph work = sg;
  std::size_t maximum = hopcroftKarp(work);
  std::set<std::pair<int, int>> common;
  if (maximum == 0)
    return common;

  const int nL = static_cast<int>(sg.equations.size());
  const auto adj = sg.equationAdjacency();
  std::vector<int> current(static_cast<size_t>(nL), -1);
  std::vector<char> used(sg.variables.size(), 0);
  bool first = true;
  bool done = false;
  std::uint64_t states = 0;

  std::function<void(int, std::size_t)> search = [&](int u, std::size_t count) {
    if (done)
      return;
    if (++states > budget)
      throwError(ErrorKind::LimitExceeded, "maximum matching enumeration exceeded its budget");
    if (count + static_cast<std::size_t>(nL - u) < maximum)
      return;
    if (u == nL) {
      if (count != maximum)
        return;
      std::set<std::pair<int, int>> pairs;
      for (int e = 0; e < nL; ++e) {
        if (current[static_cast<size_t>(e)] >= 0)
          pairs.emplace(e, current[static_cast<size_t>(e)]);
      }
      if (first) {
        common = std::move(pairs);
        first = false;
      } else {
        std::set<std::pair<int, int>> kept;
        std::set_intersection(common.begin(), common.end(), pairs.begin(), pairs.end(),
                              std::inserter(kept, kept.begin()));
        common = std::move(kept);
      }
      if (common.empty())
        done = true;
      return;
    }
    for (int v : adj[static_cast<size_t>(u)]) {
      if (!used[static_cast<size_t>(v)]) {
        used[static_cast<size_t>(v)] = 1;
        current[static_cast<size_t>(u)] = v;
        search(u + 1, count + 1);
        current[static_cast<size_t>(u)] = -1;
        used[static_cast<size_t>(v)] = 0;
        if (done)
          return;
      }
    }
    search(u + 1, count);
  };
  search(0, 0);
  return common;
}

bool pairInEveryMaximumMatchingByRemoval(const ScalarGraph& sg, int eq, int var) {
  ScalarGraph work = sg;
  std::size_t maximum = hopcroftKarp(work);

  ScalarGraph without = sg;
  without.edges.erase(std::remove_if(without.edges.begin(), without.edges.end(),
                                     [&](const ScalarGraph::Edge& e) {
                                       return e.eq == eq && e.var == var;
                                     }),
                      without.edges.end());
  return hopcroftKarp(without) < maximum;
}

namespace {

struct OmegaSearch {
  struct Candidate {
    int var;
    int arc;
  };

  std::vector<std::vector<Candidate>> candidates; // per scalar equation
  std::vector<int> nodeOf;                        // array-node ordinal per scalar equation
  std::vector<int> suffixDistinctNodes;
  std::vector<int> arcUse;
  std::vector<char> varUsed;
  std::vector<int> chosenVar;
  std::vector<int> chosenArc;
  std::vector<int> bestVar;
  std::vector<int> bestArc;
  int bestOmega = std::numeric_limits<int>::max();
  bool seeded = false;   // an upper bound (and external witness) exists
  bool recorded = false; // the search itself found a best assignment
  std::uint64_t states = 0;
  std::uint64_t budget = 0;

  void search(int u, int omega) {
    if (++states > budget)
      throwError(ErrorKind::LimitExceeded, "optimal matched-arc search exceeded its budget");
    const int n = static_cast<int>(candidates.size());
    if (u == n) {
      if (omega < bestOmega || (!seeded && !recorded)) {
        bestOmega = omega;
        bestVar = chosenVar;
        bestArc = chosenArc;
        recorded = true;
      }
      return;
    }
    // Every array node whose scalars are all still unassigned will need at
    // least one additional arc of its own.
    int lower = suffixDistinctNodes[static_cast<size_t>(u)];
    if (u > 0 && nodeOf[static_cast<size_t>(u - 1)] == nodeOf[static_cast<size_t>(u)])
      --lower;
    if ((seeded || recorded) && omega + lower >= bestOmega)
      return;

    // Try candidates over already-used arcs first; better bounds earlier.
    auto tryCandidate = [&](const Candidate& c) {
      if (varUsed[static_cast<size_t>(c.var)])
        return;
      bool newArc = arcUse[static_cast<size_t>(c.arc)] == 0;
      varUsed[static_cast<size_t>(c.var)] = 1;
      ++arcUse[static_cast<size_t>(c.arc)];
      chosenVar[static_cast<size_t>(u)] = c.var;
      chosenArc[static_cast<size_t>(u)] = c.arc;
      search(u + 1, omega + (newArc ? 1 : 0));
      chosenVar[static_cast<size_t>(u)] = -1;
      chosenArc[static_cast<size_t>(u)] = -1;
      --arcUse[static_cast<size_t>(c.arc)];
      varUsed[static_cast<size_t>(c.var)] = 0;
    };
    for (const Candidate& c : candidates[static_cast<size_t>(u)]) {
      if (arcUse[static_cast<size_t>(c.arc)] > 0)
        tryCandidate(c);
    }
    for (const Candidate& c : candidates[static_cast<size_t>(u)]) {
      if (arcUse[static_cast<size_t>(c.arc)] == 0)
        tryCandidate(c);
    }
  }
};

} // namespace

namespace {

ArrayGraph witnessFromAssignment(const ArrayGraph& graph, const ScalarGraph& sg,
                                 const std::vector<int>& varOf, const std::vector<int>& arcOf) {
  ArrayGraph witness = graph;
  witness.clearMatching();
  std::map<int, std::vector<std::pair<Point, Point>>> pairsByArc;
  for (size_t u = 0; u < varOf.size(); ++u) {
    int v = varOf[u];
    if (v < 0)
      continue;
    pairsByArc[arcOf[u]].emplace_back(sg.equations[u].index,
                                      sg.variables[static_cast<size_t>(v)].index);
  }
  for (const auto& [arcIndex, pairs] : pairsByArc) {
    Arc& arc = witness.arc(arcIndex);
    arc.matching =
        IncidenceMap::fromPairs(arc.incidence.eqShape(), arc.incidence.varShape(), pairs);
  }
  return witness;
}

} // namespace

OptimalOmegaResult optimalOmega(const ArrayGraph& graph, std::uint64_t scalarEquationCap,
                                const ArrayGraph* hint, std::uint64_t stateBudget) {
  if (graph.scalarEquationCount() > scalarEquationCap)
    throwError(ErrorKind::LimitExceeded,
               "graph has " + std::to_string(graph.scalarEquationCount()) +
                   " scalar equations, above the exhaustive search cap of " +
                   std::to_string(scalarEquationCap));

  ScalarGraph sg = flatten(graph);

  OmegaSearch search;
  search.budget = stateBudget;
  const int n = static_cast<int>(sg.equations.size());
  search.candidates.resize(static_cast<size_t>(n));
  for (const auto& edge : sg.edges)
    search.candidates[static_cast<size_t>(edge.eq)].push_back({edge.var, edge.arc});

  search.nodeOf.resize(static_cast<size_t>(n));
  {
    int ordinal = -1;
    std::string last;
    for (int u = 0; u < n; ++u) {
      if (u == 0 || sg.equations[static_cast<size_t>(u)].arrayId != last) {
        ++ordinal;
        last = sg.equations[static_cast<size_t>(u)].arrayId;
      }
      search.nodeOf[static_cast<size_t>(u)] = ordinal;
    }
  }
  search.suffixDistinctNodes.assign(static_cast<size_t>(n + 1), 0);
  for (int u = n - 1; u >= 0; --u) {
    bool newNode = (u == n - 1) || search.nodeOf[static_cast<size_t>(u)] !=
                                       search.nodeOf[static_cast<size_t>(u + 1)];
    search.suffixDistinctNodes[static_cast<size_t>(u)] =
        search.suffixDistinctNodes[static_cast<size_t>(u + 1)] + (newNode ? 1 : 0);
  }
  search.arcUse.assign(graph.arcs().size(), 0);
  search.varUsed.assign(sg.variables.size(), 0);
  search.chosenVar.assign(static_cast<size_t>(n), -1);
  search.chosenArc.assign(static_cast<size_t>(n), -1);

  OptimalOmegaResult result;

  // Feasibility and a first incumbent come from a plain maximum matching; the
  // exhaustive search then only has to look for strictly better assignments.
  ScalarGraph hk = sg;
  if (hopcroftKarp(hk) < static_cast<std::size_t>(n))
    return result; // infeasible: no complete matching exists

  std::map<std::pair<int, int>, int> arcOfEdge;
  for (const auto& edge : sg.edges)
    arcOfEdge[{edge.eq, edge.var}] = edge.arc;
  std::vector<int> hkArc(static_cast<size_t>(n), -1);
  for (int u = 0; u < n; ++u)
    hkArc[static_cast<size_t>(u)] = arcOfEdge.at({u, hk.matchedVar[static_cast<size_t>(u)]});
  ArrayGraph incumbent = witnessFromAssignment(graph, sg, hk.matchedVar, hkArc);

  if (hint != nullptr && hint->matchedScalarCount() == graph.scalarEquationCount() &&
      hint->matchedArcCount() < incumbent.matchedArcCount())
    incumbent = *hint;

  search.bestOmega = incumbent.matchedArcCount();
  search.seeded = true;
  result.witness = std::move(incumbent);

  search.search(0, 0);
  result.statesExplored = search.states;
  result.feasible = true;
  result.omega = search.bestOmega;
  if (search.recorded)
    result.witness = witnessFromAssignment(graph, sg, search.bestVar, search.bestArc);
  return result;
}

DenseIncidence::DenseIncidence(Shape eqShape, Shape varShape)
    : eqShape_(std::move(eqShape)), varShape_(std::move(varShape)) {
  eqVolume_ = shapeVolume(eqShape_);
  varVolume_ = shapeVolume(varShape_);
  if (eqVolume_ == 0 || varVolume_ == 0 || eqVolume_ > kDefaultExpansionCap ||
      varVolume_ > kDefaultExpansionCap || eqVolume_ * varVolume_ > kDefaultExpansionCap)
    throwError(ErrorKind::LimitExceeded, "dense incidence matrix too large");
  bits_.assign(static_cast<size_t>(eqVolume_ * varVolume_), 0);
}

std::uint64_t DenseIncidence::linearEq(const Point& k) const {
  if (k.size() != eqShape_.size())
    throwError(ErrorKind::InvalidArgument, "equation index arity mismatch");
  std::uint64_t index = 0;
  for (size_t d = 0; d < eqShape_.size(); ++d) {
    if (k[d] < 1 || k[d] > eqShape_[d])
      throwError(ErrorKind::InvalidArgument, "equation index out of range");
    index = index * static_cast<std::uint64_t>(eqShape_[d]) + static_cast<std::uint64_t>(k[d] - 1);
  }
  return index;
}

std::uint64_t DenseIncidence::linearVar(const Point& j) const {
  if (j.size() != varShape_.size())
    throwError(ErrorKind::InvalidArgument, "variable index arity mismatch");
  std::uint64_t index = 0;
  for (size_t d = 0; d < varShape_.size(); ++d) {
    if (j[d] < 1 || j[d] > varShape_[d])
      throwError(ErrorKind::InvalidArgument, "variable index out of range");
    index = index * static_cast<std::uint64_t>(varShape_[d]) + static_cast<std::uint64_t>(j[d] - 1);
  }
  return index;
}

DenseIncidence DenseIncidence::fromMap(const IncidenceMap& map, std::uint64_t cap) {
  DenseIncidence dense(map.eqShape(), map.varShape());
  for (const auto& [k, j] : map.pairs(cap))
    dense.set(k, j, true);
  return dense;
}

IncidenceMap DenseIncidence::toMap() const {
  return IncidenceMap::fromPairs(eqShape_, varShape_, pairs());
}

bool DenseIncidence::get(const Point& k, const Point& j) const {
  return bits_[static_cast<size_t>(linearEq(k) * varVolume_ + linearVar(j))] != 0;
}

void DenseIncidence::set(const Point& k, const Point& j, bool value) {
  bits_[static_cast<size_t>(linearEq(k) * varVolume_ + linearVar(j))] = value ? 1 : 0;
}

namespace {

void requireDenseShapes(const DenseIncidence& a, const DenseIncidence& b) {
  if (a.eqShape() != b.eqShape() || a.varShape() != b.varShape())
    throwError(ErrorKind::InvalidArgument, "dense incidence shape mismatch");
}

} // namespace

DenseIncidence DenseIncidence::denseAnd(const DenseIncidence& other) const {
  requireDenseShapes(*this, other);
  DenseIncidence out(eqShape_, varShape_);
  for (size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] && other.bits_[i];
  return out;
}

DenseIncidence DenseIncidence::denseOr(const DenseIncidence& other) const {
  requireDenseShapes(*this, other);
  DenseIncidence out(eqShape_, varShape_);
  for (size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] || other.bits_[i];
  return out;
}

DenseIncidence DenseIncidence::denseSubtract(const DenseIncidence& other) const {
  requireDenseShapes(*this, other);
  DenseIncidence out(eqShape_, varShape_);
  for (size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] && !other.bits_[i];
  return out;
}

DenseIncidence DenseIncidence::restrictRows(const std::vector<Point>& rows) const {
  DenseIncidence out(eqShape_, varShape_);
  for (const auto& [k, j] : pairs()) {
    if (std::find(rows.begin(), rows.end(), k) != rows.end())
      out.set(k, j, true);
  }
  return out;
}

DenseIncidence DenseIncidence::removeRows(const std::vector<Point>& rows) const {
  DenseIncidence out(eqShape_, varShape_);
  for (const auto& [k, j] : pairs()) {
    if (std::find(rows.begin(), rows.end(), k) == rows.end())
      out.set(k, j, true);
  }
  return out;
}

DenseIncidence DenseIncidence::restrictColumns(const std::vector<Point>& columns) const {
  DenseIncidence out(eqShape_, varShape_);
  for (const auto& [k, j] : pairs()) {
    if (std::find(columns.begin(), columns.end(), j) != columns.end())
      out.set(k, j, true);
  }
  return out;
}

DenseIncidence DenseIncidence::removeColumns(const std::vector<Point>& columns) const {
  DenseIncidence out(eqShape_, varShape_);
  for (const auto& [k, j] : pairs()) {
    if (std::find(columns.begin(), columns.end(), j) == columns.end())
      out.set(k, j, true);
  }
  return out;
}

std::vector<Point> DenseIncidence::flattenRows() const {
  std::vector<Point> out;
  for (const auto& [k, j] : pairs()) {
    (void)j;
    if (out.empty() || out.back() != k)
      out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> DenseIncidence::flattenColumns() const {
  std::vector<Point> out;
  for (const auto& [k, j] : pairs()) {
    (void)k;
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<DenseIncidence> DenseIncidence::matchOptions() const {
  const int rank = static_cast<int>(std::max(eqShape_.size(), varShape_.size()));
  std::map<Point, std::vector<std::pair<Point, Point>>> byDelta;
  for (const auto& [k, j] : pairs()) {
    Point pk = k;
    pk.resize(static_cast<size_t>(rank), 1);
    Point pj = j;
    pj.resize(static_cast<size_t>(rank), 1);
    Point delta(static_cast<size_t>(rank));
    for (int d = 0; d < rank; ++d)
      delta[static_cast<size_t>(d)] = pj[static_cast<size_t>(d)] - pk[static_cast<size_t>(d)];
    byDelta[delta].emplace_back(k, j);
  }
  std::vector<std::pair<Point, std::vector<std::pair<Point, Point>>>> groups(byDelta.begin(),
                                                                             byDelta.end());
  std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size())
      return a.second.size() > b.second.size();
    return a.first < b.first;
  });
  std::vector<DenseIncidence> options;
  options.reserve(groups.size());
  for (const auto& [delta, groupPairs] : groups) {
    (void)delta;
    DenseIncidence option(eqShape_, varShape_);
    for (const auto& [k, j] : groupPairs)
      option.set(k, j, true);
    options.push_back(std::move(option));
  }
  return options;
}

std::vector<std::pair<Point, Point>> DenseIncidence::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  MultidimensionalRange eqRange = MultidimensionalRange::full(eqShape_);
  MultidimensionalRange varRange = MultidimensionalRange::full(varShape_);
  eqRange.forEachPoint([&](const Point& k) {
    varRange.forEachPoint([&](const Point& j) {
      if (get(k, j))
        out.emplace_back(k, j);
    });
  });
  return out;
}

std::uint64_t DenseIncidence::count() const {
  std::uint64_t total = 0;
  for (char b : bits_)
    total += b ? 1 : 0;
  return total;
}

bool DenseIncidence::operator==(const DenseIncidence& other) const {
  return eqShape_ == other.eqShape_ && varShape_ == other.varShape_ && bits_ == other.bits_;
}

} // namespace oracle
} // namespace aamatch
