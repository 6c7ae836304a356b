#include "aamatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "aamatch/error.hpp"

namespace aamatch {

namespace {

IndexSet freeRowsOf(const ArrayGraph& graph, int eq) {
  return IndexSet::universe(graph.equations()[static_cast<size_t>(eq)].size)
      .subtract(graph.matchedRows(eq));
}

IndexSet freeColumnsOf(const ArrayGraph& graph, int var) {
  return IndexSet::universe(graph.variables()[static_cast<size_t>(var)].size)
      .subtract(graph.matchedColumns(var));
}

} // namespace

BfsForest bfs(const ArrayGraph& graph, const std::vector<BfsSeed>& frontier) {
  BfsForest forest;

  // Scalar indices already traversed anywhere in the forest; expanding into
  // them again cannot reach new scalar paths and would let alternating cycles
  // loop forever.
  std::vector<IndexSet> visitedRows;
  std::vector<IndexSet> visitedColumns;
  visitedRows.reserve(graph.equations().size());
  for (const auto& node : graph.equations())
    visitedRows.emplace_back(static_cast<int>(node.size.size()));
  visitedColumns.reserve(graph.variables().size());
  for (const auto& node : graph.variables())
    visitedColumns.emplace_back(static_cast<int>(node.size.size()));

  // Free scalar variables per variable node, fixed for the whole search.
  std::vector<IndexSet> freeColumns;
  freeColumns.reserve(graph.variables().size());
  for (size_t var = 0; var < graph.variables().size(); ++var)
    freeColumns.push_back(freeColumnsOf(graph, static_cast<int>(var)));

  std::vector<int> level;
  for (const auto& seed : frontier) {
    if (seed.freeRows.empty())
      throwError(ErrorKind::InvalidArgument, "bfs frontier entry with an empty filter");
    IndexSet rows = seed.freeRows.subtract(visitedRows[static_cast<size_t>(seed.equation)]);
    if (rows.empty())
      continue;
    visitedRows[static_cast<size_t>(seed.equation)] =
        visitedRows[static_cast<size_t>(seed.equation)].unite(rows);
    level.push_back(static_cast<int>(forest.nodes.size()));
    forest.nodes.push_back({true, seed.equation, std::move(rows), -1, -1,
                            IncidenceMap({1}, {1})});
  }

  while (!level.empty() && forest.leaves.empty()) {
    std::vector<int> next;
    for (int nodeIndex : level) {
      // The forest grows inside the loop; copy what the expansion needs.
      const bool isEquation = forest.nodes[static_cast<size_t>(nodeIndex)].isEquation;
      const int graphNode = forest.nodes[static_cast<size_t>(nodeIndex)].node;
      const IndexSet filter = forest.nodes[static_cast<size_t>(nodeIndex)].filter;

      const auto& adjacent = isEquation ? graph.arcsOfEquation(graphNode)
                                        : graph.arcsOfVariable(graphNode);
      for (int arcIndex : adjacent) {
        const Arc& arc = graph.arc(arcIndex);
        if (isEquation) {
          // Move equation -> variable over unmatched incidence entries.
          IncidenceMap residual = arc.incidence.subtract(arc.matching).restrictRows(filter);
          for (const IncidenceMap& option : residual.matchOptions()) {
            IncidenceMap toFree =
                option.restrictColumns(freeColumns[static_cast<size_t>(arc.var)]);
            if (!toFree.empty()) {
              forest.leaves.push_back(static_cast<int>(forest.nodes.size()));
              forest.nodes.push_back({false, arc.var, toFree.flattenColumns(), nodeIndex,
                                      arcIndex, toFree});
              continue;
            }
            IndexSet columns = option.flattenColumns().subtract(
                visitedColumns[static_cast<size_t>(arc.var)]);
            if (columns.empty())
              continue;
            visitedColumns[static_cast<size_t>(arc.var)] =
                visitedColumns[static_cast<size_t>(arc.var)].unite(columns);
            next.push_back(static_cast<int>(forest.nodes.size()));
            forest.nodes.push_back({false, arc.var, std::move(columns), nodeIndex, arcIndex,
                                    option});
          }
        } else {
          // Move variable -> equation backwards over matched entries.
          IncidenceMap matched = arc.matching.restrictColumns(filter);
          for (const IncidenceMap& option : matched.matchOptions()) {
            IndexSet rows =
                option.flattenRows().subtract(visitedRows[static_cast<size_t>(arc.eq)]);
            if (rows.empty())
              continue;
            visitedRows[static_cast<size_t>(arc.eq)] =
                visitedRows[static_cast<size_t>(arc.eq)].unite(rows);
            next.push_back(static_cast<int>(forest.nodes.size()));
            forest.nodes.push_back({true, arc.eq, std::move(rows), nodeIndex, arcIndex, option});
          }
        }
      }
    }
    level = std::move(next);
  }
  return forest;
}

namespace {

/// Walks a leaf back to its root, restricting each traversal matrix to the
/// flow that actually reaches the free variables, so consecutive steps agree
/// on the scalar rows (at equations) and columns (at variables) they carry.
AugmentingPath extractPath(const BfsForest& forest, int leaf) {
  AugmentingPath path;
  int current = leaf;
  IndexSet flow = forest.nodes[static_cast<size_t>(leaf)].filter;
  while (forest.nodes[static_cast<size_t>(current)].parent >= 0) {
    const auto& node = forest.nodes[static_cast<size_t>(current)];
    const auto& parent = forest.nodes[static_cast<size_t>(node.parent)];
    IncidenceMap restricted = node.isEquation
                                  ? node.via.restrictRows(flow)    // arrived on the equation side
                                  : node.via.restrictColumns(flow) // arrived on the variable side
        ;
    if (restricted.empty())
      throwError(ErrorKind::Internal, "augmenting path flow restriction emptied a step");
    flow = node.isEquation ? restricted.flattenColumns() : restricted.flattenRows();
    path.steps.push_back({parent.isEquation, parent.node, node.viaArc, std::move(restricted)});
    current = node.parent;
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

std::uint64_t pathOnes(const AugmentingPath& path) {
  std::uint64_t total = 0;
  for (const auto& step : path.steps)
    total += step.delta.cardinality();
  return total;
}

int comparePathsLex(const ArrayGraph& graph, const AugmentingPath& a, const AugmentingPath& b) {
  size_t n = std::min(a.steps.size(), b.steps.size());
  for (size_t i = 0; i < n; ++i) {
    const PathStep& sa = a.steps[i];
    const PathStep& sb = b.steps[i];
    if (sa.fromEquation != sb.fromEquation)
      return sa.fromEquation ? -1 : 1;
    const std::string& ida = sa.fromEquation ? graph.equations()[static_cast<size_t>(sa.node)].id
                                             : graph.variables()[static_cast<size_t>(sa.node)].id;
    const std::string& idb = sb.fromEquation ? graph.equations()[static_cast<size_t>(sb.node)].id
                                             : graph.variables()[static_cast<size_t>(sb.node)].id;
    if (ida != idb)
      return ida < idb ? -1 : 1;
    if (sa.arc != sb.arc)
      return sa.arc < sb.arc ? -1 : 1;
    int c = sa.delta.compareRepresentation(sb.delta);
    if (c != 0)
      return c;
  }
  if (a.steps.size() != b.steps.size())
    return a.steps.size() < b.steps.size() ? -1 : 1;
  return 0;
}

} // namespace

std::vector<AugmentingPath> augmentingPaths(const ArrayGraph& graph) {
  std::vector<BfsSeed> frontier;
  for (size_t eq = 0; eq < graph.equations().size(); ++eq) {
    IndexSet rows = freeRowsOf(graph, static_cast<int>(eq));
    if (!rows.empty())
      frontier.push_back({static_cast<int>(eq), std::move(rows)});
  }
  if (frontier.empty())
    return {};

  BfsForest forest = bfs(graph, frontier);
  if (forest.leaves.empty())
    return {};

  std::vector<AugmentingPath> candidates;
  candidates.reserve(forest.leaves.size());
  for (int leaf : forest.leaves)
    candidates.push_back(extractPath(forest, leaf));

  // Bundles carrying more scalar pairs first; full lexicographic tie-break
  // keeps runs reproducible.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const AugmentingPath& a, const AugmentingPath& b) {
                     std::uint64_t oa = pathOnes(a);
                     std::uint64_t ob = pathOnes(b);
                     if (oa != ob)
                       return oa > ob;
                     return comparePathsLex(graph, a, b) < 0;
                   });

  // Greedy non-intersection filter: accepted paths may not share a scalar row
  // on any equation node nor a scalar column on any variable node.
  std::map<int, IndexSet> usedRows;
  std::map<int, IndexSet> usedColumns;
  std::vector<AugmentingPath> accepted;
  for (auto& candidate : candidates) {
    bool intersects = false;
    for (const auto& step : candidate.steps) {
      const Arc& arc = graph.arc(step.arc);
      IndexSet rows = step.delta.flattenRows();
      IndexSet columns = step.delta.flattenColumns();
      auto rowsIt = usedRows.find(arc.eq);
      if (rowsIt != usedRows.end() && rowsIt->second.intersects(rows)) {
        intersects = true;
        break;
      }
      auto colsIt = usedColumns.find(arc.var);
      if (colsIt != usedColumns.end() && colsIt->second.intersects(columns)) {
        intersects = true;
        break;
      }
    }
    if (intersects)
      continue;
    for (const auto& step : candidate.steps) {
      const Arc& arc = graph.arc(step.arc);
      IndexSet rows = step.delta.flattenRows();
      IndexSet columns = step.delta.flattenColumns();
      auto rowsIt = usedRows.find(arc.eq);
      if (rowsIt == usedRows.end())
        usedRows.emplace(arc.eq, rows);
      else
        rowsIt->second = rowsIt->second.unite(rows);
      auto colsIt = usedColumns.find(arc.var);
      if (colsIt == usedColumns.end())
        usedColumns.emplace(arc.var, columns);
      else
        colsIt->second = colsIt->second.unite(columns);
    }
    accepted.push_back(std::move(candidate));
  }
  return accepted;
}

void applyPath(ArrayGraph& graph, const AugmentingPath& path) {
  if (path.steps.empty())
    throwError(ErrorKind::InvalidArgument, "cannot apply an empty augmenting path");
  for (const auto& step : path.steps) {
    if (step.delta.empty())
      throwError(ErrorKind::Validation, "augmenting path step with an empty matrix");
    const Arc& arc = graph.arc(step.arc);
    if (!step.delta.intersect(arc.incidence).setEquals(step.delta))
      throwError(ErrorKind::Validation,
                 "augmenting path step leaves the incidence matrix of its arc");
  }
  for (const auto& step : path.steps) {
    Arc& arc = graph.arc(step.arc);
    arc.matching = step.fromEquation ? arc.matching.unite(step.delta)
                                     : arc.matching.subtract(step.delta);
  }
}

namespace {

struct NodeRef {
  bool isEquation;
  int node;
  bool operator==(const NodeRef& other) const = default;
};

int unmatchedArcCount(const ArrayGraph& graph, const NodeRef& node, int* onlyArc) {
  const auto& adjacent = node.isEquation ? graph.arcsOfEquation(node.node)
                                         : graph.arcsOfVariable(node.node);
  int count = 0;
  for (int arcIndex : adjacent) {
    const Arc& arc = graph.arc(arcIndex);
    if (!arc.incidence.subtract(arc.matching).empty()) {
      ++count;
      if (onlyArc != nullptr)
        *onlyArc = arcIndex;
    }
  }
  return count;
}

bool fullyMatched(const ArrayGraph& graph, const NodeRef& node) {
  if (node.isEquation) {
    return graph.matchedRows(node.node).cardinality() ==
           shapeVolume(graph.equations()[static_cast<size_t>(node.node)].size);
  }
  return graph.matchedColumns(node.node).cardinality() ==
         shapeVolume(graph.variables()[static_cast<size_t>(node.node)].size);
}

} // namespace

SimplifyResult simplify(ArrayGraph& graph) {
  auto violations = graph.validate(ValidationMode::Partial);
  if (!violations.empty())
    throwError(ErrorKind::Validation,
               "simplify requires a valid graph; first violation: " +
                   violationToString(violations.front()));

  SimplifyResult result;
  std::deque<NodeRef> worklist;
  for (size_t eq = 0; eq < graph.equations().size(); ++eq) {
    if (graph.arcsOfEquation(static_cast<int>(eq)).size() == 1)
      worklist.push_back({true, static_cast<int>(eq)});
  }
  for (size_t var = 0; var < graph.variables().size(); ++var) {
    if (graph.arcsOfVariable(static_cast<int>(var)).size() == 1)
      worklist.push_back({false, static_cast<int>(var)});
  }

  while (!worklist.empty()) {
    NodeRef node = worklist.front();
    worklist.pop_front();

    int arcIndex = -1;
    if (unmatchedArcCount(graph, node, &arcIndex) != 1)
      continue;
    Arc& arc = graph.arc(arcIndex);
    NodeRef neighbor{!node.isEquation, node.isEquation ? arc.var : arc.eq};

    auto options = arc.incidence.matchOptions();
    if (options.size() != 1)
      continue; // any choice here would be arbitrary; the search phase decides

    IncidenceMap committed = options.front()
                                 .removeRows(graph.matchedRows(arc.eq))
                                 .removeColumns(graph.matchedColumns(arc.var));
    if (committed.empty())
      continue;
    arc.matching = arc.matching.unite(committed);
    result.forced.push_back({arcIndex, std::move(committed)});

    if (fullyMatched(graph, neighbor)) {
      const auto& adjacent = neighbor.isEquation ? graph.arcsOfEquation(neighbor.node)
                                                 : graph.arcsOfVariable(neighbor.node);
      for (int otherArc : adjacent) {
        const Arc& other = graph.arc(otherArc);
        if (other.incidence.subtract(other.matching).empty())
          continue;
        NodeRef reached{!neighbor.isEquation,
                        neighbor.isEquation ? other.var : other.eq};
        if (unmatchedArcCount(graph, reached, nullptr) == 1)
          worklist.push_back(reached);
      }
    } else if (unmatchedArcCount(graph, neighbor, nullptr) == 1) {
      worklist.push_back(neighbor);
    }
  }
  return result;
}

MatchResult match(ArrayGraph& graph, const MatchOptions& options) {
  auto violations = graph.validate(ValidationMode::Partial);
  if (!violations.empty())
    throwError(ErrorKind::Validation,
               "match requires a valid graph; first violation: " +
                   violationToString(violations.front()));

  std::uint64_t limit = options.maxIterations;
  if (limit == 0)
    limit = 10 * std::max<std::uint64_t>(graph.scalarEquationCount(), 1);

  MatchResult result;
  std::uint64_t matched = graph.matchedScalarCount();
  for (std::uint64_t iteration = 0;; ++iteration) {
    auto paths = augmentingPaths(graph);
    if (paths.empty())
      break;
    if (iteration >= limit)
      throwError(ErrorKind::LimitExceeded,
                 "matching did not converge within " + std::to_string(limit) +
                     " iterations; this indicates a bug, not a model property");
    for (const auto& path : paths)
      applyPath(graph, path);
    std::uint64_t nowMatched = graph.matchedScalarCount();
    if (nowMatched <= matched)
      throwError(ErrorKind::Internal, "matching phase did not increase the matched count");
    matched = nowMatched;
    result.phases.push_back({static_cast<int>(paths.size()), matched});
  }
  return result;
}

} // namespace aamatch
