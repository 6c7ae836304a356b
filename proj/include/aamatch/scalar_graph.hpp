#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aamatch/index_set.hpp"

namespace aamatch {

/// Flattened bipartite graph: one node per scalar equation / scalar variable
/// component, one edge per incidence entry. Used as the ground-truth model by
/// the oracles.
struct ScalarGraph {
  struct ScalarNode {
    std::string arrayId;
    Point index;
  };

  struct Edge {
    int eq;  // index into equations
    int var; // index into variables
    int arc; // index of the originating array arc, -1 when unknown
  };

  std::vector<ScalarNode> equations; // sorted by (arrayId, index)
  std::vector<ScalarNode> variables; // sorted by (arrayId, index)
  std::vector<Edge> edges;           // sorted by (eq, var)
  std::vector<int> matchedVar;       // per equation, variable index or -1
  std::vector<int> matchedEq;        // per variable, equation index or -1

  ScalarGraph() = default;

  int findEquation(const std::string& arrayId, const Point& index) const;
  int findVariable(const std::string& arrayId, const Point& index) const;

  /// Sorted adjacency (variable indices per equation).
  std::vector<std::vector<int>> equationAdjacency() const;

  std::size_t matchedCount() const;
  void clearMatching();
  void setMatch(int eq, int var);
};

} // namespace aamatch
