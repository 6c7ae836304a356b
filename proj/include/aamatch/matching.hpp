#pragma once

#include <cstdint>
#include <vector>

#include "aamatch/array_graph.hpp"
#include "aamatch/incidence_map.hpp"
#include "aamatch/index_set.hpp"

namespace aamatch {

/// One step of an augmenting path: starting node, traversed arc, and the
/// matrix of matching entries the step adds (equation start) or removes
/// (variable start).
struct PathStep {
  bool fromEquation;
  int node; // equation or variable index, per fromEquation
  int arc;
  IncidenceMap delta;
};

struct AugmentingPath {
  std::vector<PathStep> steps;
};

/// Search forest produced by the level-synchronous residual search. Each node
/// carries the graph node it stands on and the filter of scalar indices the
/// bundled paths traverse there.
struct BfsForest {
  struct Node {
    bool isEquation;
    int node;
    IndexSet filter;
    int parent; // forest index, -1 for roots
    int viaArc; // graph arc traversed from the parent, -1 for roots
    IncidenceMap via;
  };
  std::vector<Node> nodes;
  std::vector<int> leaves; // forest indices; all at the stopping level
};

struct BfsSeed {
  int equation;
  IndexSet freeRows;
};

/// Level-synchronous search for augmenting paths in the residual graph.
/// Equation-to-variable moves traverse unmatched incidence entries, variable-
/// to-equation moves traverse matched ones; a move reaching free scalar
/// variables becomes a leaf and stops the whole search at that level.
BfsForest bfs(const ArrayGraph& graph, const std::vector<BfsSeed>& frontier);

/// Non-intersecting augmenting paths, flow-restricted and sorted so bundles
/// covering more scalar pairs come first. Empty result means the matching is
/// maximal.
std::vector<AugmentingPath> augmentingPaths(const ArrayGraph& graph);

/// Applies a path: equation-start steps extend the arc matching, variable-
/// start steps retract it. Validates every step before mutating anything.
void applyPath(ArrayGraph& graph, const AugmentingPath& path);

struct ForcedMatch {
  int arc;
  IncidenceMap committed;
};

struct SimplifyResult {
  std::vector<ForcedMatch> forced;
};

/// Obligatory-match propagation: nodes with a single arc (or, as matches
/// accumulate, a single arc with unmatched entries) whose arc admits exactly
/// one match option get that option committed, minus whatever is already
/// matched on either endpoint. Runs to a fixpoint.
SimplifyResult simplify(ArrayGraph& graph);

struct MatchOptions {
  /// 0 selects the default of 10x the scalar equation count.
  std::uint64_t maxIterations = 0;
};

struct MatchPhase {
  int pathsApplied = 0;
  std::uint64_t matchedScalars = 0; // after the phase
};

struct MatchResult {
  std::vector<MatchPhase> phases;
};

/// Repeats augmentingPaths + applyPath until no augmenting path remains.
/// The resulting matched cardinality is maximal on the flattened graph.
MatchResult match(ArrayGraph& graph, const MatchOptions& options = {});

} // namespace aamatch
