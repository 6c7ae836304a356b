#include "aamatch/array_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "aamatch/error.hpp"

namespace aamatch {

std::string violationToString(const Violation& v) {
  std::ostringstream os;
  os << "condition " << v.condition;
  if (!v.eqId.empty() || !v.varId.empty())
    os << " [" << v.eqId << " -- " << v.varId << "]";
  os << ": " << v.message;
  return os.str();
}

namespace {

void checkNode(const std::string& id, const Shape& size) {
  if (id.empty())
    throwError(ErrorKind::InvalidArgument, "node id must be non-empty");
  if (size.empty())
    throwError(ErrorKind::InvalidArgument, "node '" + id + "' has an empty size vector");
  for (Index s : size) {
    if (s < 1)
      throwError(ErrorKind::InvalidArgument, "node '" + id + "' has a non-positive size");
  }
}

} // namespace

void ArrayGraph::addEquation(std::string id, std::string name, Shape size) {
  if (frozen_)
    throwError(ErrorKind::InvalidArgument, "graph structure is frozen");
  checkNode(id, size);
  equations_.push_back({std::move(id), std::move(name), std::move(size)});
}

void ArrayGraph::addVariable(std::string id, std::string name, Shape size) {
  if (frozen_)
    throwError(ErrorKind::InvalidArgument, "graph structure is frozen");
  checkNode(id, size);
  variables_.push_back({std::move(id), std::move(name), std::move(size)});
}

void ArrayGraph::addArc(const std::string& eqId, const std::string& varId,
                        IncidenceMap incidence) {
  IncidenceMap matching(incidence.eqShape(), incidence.varShape());
  addArc(eqId, varId, std::move(incidence), std::move(matching));
}

void ArrayGraph::addArc(const std::string& eqId, const std::string& varId, IncidenceMap incidence,
                        IncidenceMap matching) {
  if (frozen_)
    throwError(ErrorKind::InvalidArgument, "graph structure is frozen");
  if (!incidence.sameShapes(matching))
    throwError(ErrorKind::InvalidArgument,
               "arc " + eqId + " -- " + varId + ": matching shapes differ from incidence shapes");
  pending_.push_back({eqId, varId, std::move(incidence), std::move(matching)});
}

void ArrayGraph::freeze() {
  if (frozen_)
    return;

  auto byId = [](const ArrayNode& a, const ArrayNode& b) { return a.id < b.id; };
  std::sort(equations_.begin(), equations_.end(), byId);
  std::sort(variables_.begin(), variables_.end(), byId);

  std::map<std::string, int> eqIndex;
  std::map<std::string, int> varIndex;
  for (size_t i = 0; i < equations_.size(); ++i) {
    if (!eqIndex.emplace(equations_[i].id, static_cast<int>(i)).second)
      throwError(ErrorKind::Validation, "duplicate equation id '" + equations_[i].id + "'");
  }
  for (size_t i = 0; i < variables_.size(); ++i) {
    if (!varIndex.emplace(variables_[i].id, static_cast<int>(i)).second)
      throwError(ErrorKind::Validation, "duplicate variable id '" + variables_[i].id + "'");
    if (eqIndex.count(variables_[i].id))
      throwError(ErrorKind::Validation,
                 "id '" + variables_[i].id + "' used on both sides of the graph");
  }

  std::map<std::pair<int, int>, Arc> merged;
  for (auto& p : pending_) {
    auto eqIt = eqIndex.find(p.eqId);
    if (eqIt == eqIndex.end())
      throwError(ErrorKind::Validation, "arc references unknown equation '" + p.eqId + "'");
    auto varIt = varIndex.find(p.varId);
    if (varIt == varIndex.end())
      throwError(ErrorKind::Validation, "arc references unknown variable '" + p.varId + "'");
    const ArrayNode& eqNode = equations_[static_cast<size_t>(eqIt->second)];
    const ArrayNode& varNode = variables_[static_cast<size_t>(varIt->second)];
    if (p.incidence.eqShape() != eqNode.size || p.incidence.varShape() != varNode.size)
      throwError(ErrorKind::Validation, "arc " + p.eqId + " -- " + p.varId +
                                            ": incidence shapes do not match the node sizes");
    auto key = std::make_pair(eqIt->second, varIt->second);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, Arc{eqIt->second, varIt->second, std::move(p.incidence),
                              std::move(p.matching)});
    } else {
      it->second.incidence = it->second.incidence.unite(p.incidence);
      it->second.matching = it->second.matching.unite(p.matching);
    }
  }
  pending_.clear();

  arcs_.clear();
  arcs_.reserve(merged.size());
  eqArcs_.assign(equations_.size(), {});
  varArcs_.assign(variables_.size(), {});
  for (auto& [key, arc] : merged) {
    int index = static_cast<int>(arcs_.size());
    eqArcs_[static_cast<size_t>(key.first)].push_back(index);
    varArcs_[static_cast<size_t>(key.second)].push_back(index);
    arcs_.push_back(std::move(arc));
  }

  frozen_ = true;
}

void ArrayGraph::requireFrozen() const {
  if (!frozen_)
    throwError(ErrorKind::InvalidArgument, "graph must be frozen first");
}

int ArrayGraph::findEquation(const std::string& id) const {
  requireFrozen();
  auto it = std::lower_bound(equations_.begin(), equations_.end(), id,
                             [](const ArrayNode& n, const std::string& v) { return n.id < v; });
  if (it == equations_.end() || it->id != id)
    return -1;
  return static_cast<int>(it - equations_.begin());
}

int ArrayGraph::findVariable(const std::string& id) const {
  requireFrozen();
  auto it = std::lower_bound(variables_.begin(), variables_.end(), id,
                             [](const ArrayNode& n, const std::string& v) { return n.id < v; });
  if (it == variables_.end() || it->id != id)
    return -1;
  return static_cast<int>(it - variables_.begin());
}

const std::vector<int>& ArrayGraph::arcsOfEquation(int eq) const {
  requireFrozen();
  return eqArcs_[static_cast<size_t>(eq)];
}

const std::vector<int>& ArrayGraph::arcsOfVariable(int var) const {
  requireFrozen();
  return varArcs_[static_cast<size_t>(var)];
}

std::uint64_t ArrayGraph::scalarEquationCount() const {
  std::uint64_t total = 0;
  for (const auto& node : equations_)
    total += shapeVolume(node.size);
  return total;
}

std::uint64_t ArrayGraph::scalarVariableCount() const {
  std::uint64_t total = 0;
  for (const auto& node : variables_)
    total += shapeVolume(node.size);
  return total;
}

std::uint64_t ArrayGraph::matchedScalarCount() const {
  std::uint64_t total = 0;
  for (const auto& arc : arcs_)
    total += arc.matching.cardinality();
  return total;
}

IndexSet ArrayGraph::matchedRows(int eq) const {
  requireFrozen();
  IndexSet rows(static_cast<int>(equations_[static_cast<size_t>(eq)].size.size()));
  for (int arcIndex : eqArcs_[static_cast<size_t>(eq)])
    rows = rows.unite(arcs_[static_cast<size_t>(arcIndex)].matching.flattenRows());
  return rows;
}

IndexSet ArrayGraph::matchedColumns(int var) const {
  requireFrozen();
  IndexSet columns(static_cast<int>(variables_[static_cast<size_t>(var)].size.size()));
  for (int arcIndex : varArcs_[static_cast<size_t>(var)])
    columns = columns.unite(arcs_[static_cast<size_t>(arcIndex)].matching.flattenColumns());
  return columns;
}

int ArrayGraph::matchedArcCount() const {
  int count = 0;
  for (const auto& arc : arcs_) {
    if (!arc.matching.empty())
      ++count;
  }
  return count;
}

std::vector<Violation> ArrayGraph::validate(ValidationMode mode) const {
  requireFrozen();
  std::vector<Violation> out;

  for (const auto& arc : arcs_) {
    const std::string& eqId = equations_[static_cast<size_t>(arc.eq)].id;
    const std::string& varId = variables_[static_cast<size_t>(arc.var)].id;
    if (arc.incidence.empty())
      out.push_back({0, eqId, varId, "arc carries an empty incidence matrix"});
    IncidenceMap outside = arc.matching.subtract(arc.incidence);
    if (!outside.empty())
      out.push_back({5, eqId, varId,
                     "matching entries outside the incidence matrix: " + outside.toString()});
    if (mode == ValidationMode::Complete && arc.matching.empty())
      out.push_back({4, eqId, varId, "fully unmatched arc present in a matching graph"});
  }

  for (size_t eq = 0; eq < equations_.size(); ++eq) {
    std::uint64_t entries = 0;
    IndexSet rows(static_cast<int>(equations_[eq].size.size()));
    for (int arcIndex : eqArcs_[eq]) {
      entries += arcs_[static_cast<size_t>(arcIndex)].matching.cardinality();
      rows = rows.unite(arcs_[static_cast<size_t>(arcIndex)].matching.flattenRows());
    }
    if (entries != rows.cardinality())
      out.push_back({6, equations_[eq].id, "",
                     "a scalar equation is matched more than once (" + std::to_string(entries) +
                         " entries over " + std::to_string(rows.cardinality()) + " rows)"});
    if (mode == ValidationMode::Complete) {
      std::uint64_t volume = shapeVolume(equations_[eq].size);
      if (rows.cardinality() != volume) {
        IndexSet missing = IndexSet::universe(equations_[eq].size).subtract(rows);
        out.push_back({6, equations_[eq].id, "",
                       "unmatched scalar equations: " + missing.toString()});
      }
    }
  }

  for (size_t var = 0; var < variables_.size(); ++var) {
    std::uint64_t entries = 0;
    IndexSet columns(static_cast<int>(variables_[var].size.size()));
    for (int arcIndex : varArcs_[var]) {
      entries += arcs_[static_cast<size_t>(arcIndex)].matching.cardinality();
      columns = columns.unite(arcs_[static_cast<size_t>(arcIndex)].matching.flattenColumns());
    }
    if (entries != columns.cardinality())
      out.push_back({6, "", variables_[var].id,
                     "a scalar variable is matched more than once (" + std::to_string(entries) +
                         " entries over " + std::to_string(columns.cardinality()) + " columns)"});
    if (mode == ValidationMode::Complete) {
      std::uint64_t volume = shapeVolume(variables_[var].size);
      if (columns.cardinality() != volume) {
        IndexSet missing = IndexSet::universe(variables_[var].size).subtract(columns);
        out.push_back({6, "", variables_[var].id,
                       "unmatched scalar variables: " + missing.toString()});
      }
    }
  }

  return out;
}

ArrayGraph ArrayGraph::matchedView() const {
  requireFrozen();
  ArrayGraph view;
  for (const auto& node : equations_)
    view.addEquation(node.id, node.name, node.size);
  for (const auto& node : variables_)
    view.addVariable(node.id, node.name, node.size);
  for (const auto& arc : arcs_) {
    if (arc.matching.empty())
      continue;
    view.addArc(equations_[static_cast<size_t>(arc.eq)].id,
                variables_[static_cast<size_t>(arc.var)].id, arc.incidence, arc.matching);
  }
  view.freeze();
  return view;
}

void ArrayGraph::clearMatching() {
  requireFrozen();
  for (auto& arc : arcs_)
    arc.matching = IncidenceMap(arc.incidence.eqShape(), arc.incidence.varShape());
}

ScalarGraph flatten(const ArrayGraph& graph, std::uint64_t scalarCap) {
  std::uint64_t scalarNodes = graph.scalarEquationCount() + graph.scalarVariableCount();
  std::uint64_t scalarEdges = 0;
  for (const auto& arc : graph.arcs())
    scalarEdges += arc.incidence.cardinality();
  if (scalarNodes > scalarCap || scalarEdges > scalarCap)
    throwError(ErrorKind::LimitExceeded,
               "flattening would produce " + std::to_string(scalarNodes) + " nodes and " +
                   std::to_string(scalarEdges) + " edges (cap " + std::to_string(scalarCap) + ")");

  ScalarGraph sg;
  std::vector<std::uint64_t> eqOffset(graph.equations().size());
  std::vector<std::uint64_t> varOffset(graph.variables().size());
  for (size_t i = 0; i < graph.equations().size(); ++i) {
    const auto& node = graph.equations()[i];
    eqOffset[i] = sg.equations.size();
    IndexSet::universe(node.size).forEachPoint(
        [&](const Point& p) { sg.equations.push_back({node.id, p}); });
  }
  for (size_t i = 0; i < graph.variables().size(); ++i) {
    const auto& node = graph.variables()[i];
    varOffset[i] = sg.variables.size();
    IndexSet::universe(node.size).forEachPoint(
        [&](const Point& p) { sg.variables.push_back({node.id, p}); });
  }

  // Points enumerate in lexicographic order, matching the node ordering above,
  // so a linearized offset lookup is enough.
  auto linear = [](const Shape& size, const Point& p) {
    std::uint64_t index = 0;
    for (size_t d = 0; d < size.size(); ++d)
      index = index * static_cast<std::uint64_t>(size[d]) + static_cast<std::uint64_t>(p[d] - 1);
    return index;
  };

  sg.clearMatching();
  for (size_t arcIndex = 0; arcIndex < graph.arcs().size(); ++arcIndex) {
    const Arc& arc = graph.arcs()[arcIndex];
    const Shape& eqSize = graph.equations()[static_cast<size_t>(arc.eq)].size;
    const Shape& varSize = graph.variables()[static_cast<size_t>(arc.var)].size;
    for (const auto& [k, j] : arc.incidence.pairs(scalarCap)) {
      int eq = static_cast<int>(eqOffset[static_cast<size_t>(arc.eq)] + linear(eqSize, k));
      int var = static_cast<int>(varOffset[static_cast<size_t>(arc.var)] + linear(varSize, j));
      sg.edges.push_back({eq, var, static_cast<int>(arcIndex)});
    }
    for (const auto& [k, j] : arc.matching.pairs(scalarCap)) {
      int eq = static_cast<int>(eqOffset[static_cast<size_t>(arc.eq)] + linear(eqSize, k));
      int var = static_cast<int>(varOffset[static_cast<size_t>(arc.var)] + linear(varSize, j));
      sg.setMatch(eq, var);
    }
  }
  std::sort(sg.edges.begin(), sg.edges.end(), [](const auto& a, const auto& b) {
    if (a.eq != b.eq)
      return a.eq < b.eq;
    if (a.var != b.var)
      return a.var < b.var;
    return a.arc < b.arc;
  });
  return sg;
}

} // namespace aamatch
