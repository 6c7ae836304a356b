#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aamatch/incidence_map.hpp"
#include "aamatch/index_set.hpp"
#include "aamatch/scalar_graph.hpp"

namespace aamatch {

struct ArrayNode {
  std::string id;
  std::string name;
  Shape size;
};

/// One dependency between an array equation node and an array variable node.
/// `incidence` marks which scalar variables appear in which scalar equations;
/// `matching` is the currently matched subset of it.
struct Arc {
  int eq;  // index into ArrayGraph::equations()
  int var; // index into ArrayGraph::variables()
  IncidenceMap incidence;
  IncidenceMap matching;
};

enum class ValidationMode { Partial, Complete };

struct Violation {
  int condition; // 0: graph structure, 1..6: matching conditions
  std::string eqId;
  std::string varId;
  std::string message;
};

std::string violationToString(const Violation& v);

/// Bipartite graph of array equation and array variable nodes. Structure is
/// frozen after build; only the per-arc matching matrices are mutable, through
/// the matching algorithms.
class ArrayGraph {
public:
  ArrayGraph() = default;

  void addEquation(std::string id, std::string name, Shape size);
  void addVariable(std::string id, std::string name, Shape size);
  /// Incidence must be non-empty and shaped (equation size, variable size).
  /// Entries for an existing (eq, var) pair are merged by union.
  void addArc(const std::string& eqId, const std::string& varId, IncidenceMap incidence);
  void addArc(const std::string& eqId, const std::string& varId, IncidenceMap incidence,
              IncidenceMap matching);
  /// Sorts nodes and arcs and builds adjacency; call once after construction.
  void freeze();
  bool frozen() const { return frozen_; }

  const std::vector<ArrayNode>& equations() const { return equations_; }
  const std::vector<ArrayNode>& variables() const { return variables_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  Arc& arc(int index) { return arcs_[static_cast<size_t>(index)]; }
  const Arc& arc(int index) const { return arcs_[static_cast<size_t>(index)]; }

  int findEquation(const std::string& id) const;
  int findVariable(const std::string& id) const;
  const std::vector<int>& arcsOfEquation(int eq) const;
  const std::vector<int>& arcsOfVariable(int var) const;

  std::uint64_t scalarEquationCount() const;
  std::uint64_t scalarVariableCount() const;
  std::uint64_t matchedScalarCount() const;

  /// Scalar equation indices of an equation node already matched on some arc.
  IndexSet matchedRows(int eq) const;
  /// Scalar variable indices of a variable node already matched on some arc.
  IndexSet matchedColumns(int var) const;

  /// Number of arcs carrying at least one matched pair (the loop-preservation
  /// metric: each such arc needs one looping construct in generated code).
  int matchedArcCount() const;

  std::vector<Violation> validate(ValidationMode mode) const;

  /// Copy with fully unmatched arcs dropped: the graph of the matching itself.
  ArrayGraph matchedView() const;

  void clearMatching();

private:
  void requireFrozen() const;

  bool frozen_ = false;
  std::vector<ArrayNode> equations_;
  std::vector<ArrayNode> variables_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> eqArcs_;
  std::vector<std::vector<int>> varArcs_;

  struct PendingArc {
    std::string eqId;
    std::string varId;
    IncidenceMap incidence;
    IncidenceMap matching;
  };
  std::vector<PendingArc> pending_;
};

/// Expands the array graph into its scalar twin, carrying the matching along.
/// Fails when the total size exceeds the cap.
ScalarGraph flatten(const ArrayGraph& graph, std::uint64_t scalarCap = kDefaultExpansionCap);

} // namespace aamatch
