#include "aamatch/scalar_graph.hpp"

#include <algorithm>

#include "aamatch/error.hpp"

namespace aamatch {

namespace {

bool nodeLess(const ScalarGraph::ScalarNode& a, const ScalarGraph::ScalarNode& b) {
  if (a.arrayId != b.arrayId)
    return a.arrayId < b.arrayId;
  return a.index < b.index;
}

int findNode(const std::vector<ScalarGraph::ScalarNode>& nodes, const std::string& arrayId,
             const Point& index) {
  ScalarGraph::ScalarNode probe{arrayId, index};
  auto it = std::lower_bound(nodes.begin(), nodes.end(), probe, nodeLess);
  if (it == nodes.end() || it->arrayId != arrayId || it->index != index)
    return -1;
  return static_cast<int>(it - nodes.begin());
}

} // namespace

int ScalarGraph::findEquation(const std::string& arrayId, const Point& index) const {
  return findNode(equations, arrayId, index);
}

int ScalarGraph::findVariable(const std::string& arrayId, const Point& index) const {
  return findNode(variables, arrayId, index);
}

std::vector<std::vector<int>> ScalarGraph::equationAdjacency() const {
  std::vector<std::vector<int>> adj(equations.size());
  for (const auto& edge : edges)
    adj[static_cast<size_t>(edge.eq)].push_back(edge.var);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::size_t ScalarGraph::matchedCount() const {
  std::size_t n = 0;
  for (int v : matchedVar) {
    if (v >= 0)
      ++n;
  }
  return n;
}

void ScalarGraph::clearMatching() {
  matchedVar.assign(equations.size(), -1);
  matchedEq.assign(variables.size(), -1);
}

void ScalarGraph::setMatch(int eq, int var) {
  if (eq < 0 || eq >= static_cast<int>(equations.size()) || var < 0 ||
      var >= static_cast<int>(variables.size()))
    throwError(ErrorKind::InvalidArgument, "scalar match indices out of range");
  if (matchedVar[static_cast<size_t>(eq)] >= 0 || matchedEq[static_cast<size_t>(var)] >= 0)
    throwError(ErrorKind::Validation, "scalar node matched twice");
  matchedVar[static_cast<size_t>(eq)] = var;
  matchedEq[static_cast<size_t>(var)] = eq;
}

} // namespace aamatch
