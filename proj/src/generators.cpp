#include "aamatch/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "aamatch/error.hpp"

namespace aamatch {

ParsedClauses parseClauses(const std::string& text) {
  ParsedClauses out;
  std::istringstream stream(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(stream, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream tokens(line);
    std::vector<Literal> literals;
    std::string token;
    while (tokens >> token) {
      Literal lit;
      if (token[0] == '!') {
        lit.negated = true;
        token = token.substr(1);
      }
      if (token.empty())
        throwError(ErrorKind::Parse,
                   "line " + std::to_string(lineNo) + ": lone '!' without a literal name");
      lit.name = token;
      literals.push_back(std::move(lit));
    }
    if (literals.empty())
      continue;
    if (literals.size() == 1) {
      literals.push_back(literals.front());
      ++out.unaryDuplicated;
    }
    if (literals.size() != 2)
      throwError(ErrorKind::Parse, "line " + std::to_string(lineNo) +
                                       ": a clause may contain at most two literals");
    out.clauses.push_back({literals[0], literals[1]});
  }
  return out;
}

NormalizationReport normalizeClauses(std::vector<Clause2>& clauses) {
  NormalizationReport report;
  std::set<std::string> usedNames;
  for (const auto& clause : clauses) {
    usedNames.insert(clause.first.name);
    usedNames.insert(clause.second.name);
  }

  std::set<std::string> seen;
  std::map<std::string, std::string> renames;
  auto visit = [&](Literal& lit) {
    auto renamed = renames.find(lit.name);
    if (renamed != renames.end()) {
      lit.name = renamed->second;
      lit.negated = !lit.negated;
    }
    if (seen.insert(lit.name).second && lit.negated) {
      std::string complement = lit.name + "_c";
      while (usedNames.count(complement))
        complement += "_c";
      usedNames.insert(complement);
      renames[lit.name] = complement;
      report.complementRenames[lit.name] = complement;
      seen.erase(lit.name);
      seen.insert(complement);
      lit.name = complement;
      lit.negated = false;
    }
  };
  for (auto& clause : clauses) {
    visit(clause.first);
    visit(clause.second);
  }
  return report;
}

ArrayGraph genWire(Index n) {
  if (n < 4)
    throwError(ErrorKind::InvalidArgument, "the wire model needs at least 4 volumes");

  ArrayGraph graph;
  graph.addVariable("der_T", "der(T)", {n});
  graph.addEquation("eq_first", "first volume", {1});
  graph.addEquation("eq_interior", "interior volumes", {n - 2});
  graph.addEquation("eq_last", "last volume", {1});

  auto diagonal = [](Shape eqShape, Shape varShape, Index lo, Index hi, Index delta) {
    std::vector<IncidenceMap::Element> elements;
    elements.push_back({IndexSet(MultidimensionalRange({{lo, hi}})), {delta}});
    return IncidenceMap(std::move(eqShape), std::move(varShape), std::move(elements));
  };

  graph.addArc("eq_first", "der_T", diagonal({1}, {n}, 1, 1, 0));
  graph.addArc("eq_interior", "der_T", diagonal({n - 2}, {n}, 1, n - 2, 1));
  graph.addArc("eq_last", "der_T", diagonal({1}, {n}, 1, 1, n - 1));
  graph.freeze();
  return graph;
}

namespace {

/// Scalar-level construction state for the clause encoder. Literal cycles are
/// grown segment by segment ("alpha" nodes become variables, "beta" nodes
/// equations); clause membership groups two alpha/beta pairs into size-2
/// arrays.
struct CycleBuilder {
  struct SegmentNode {
    std::string alpha;
    std::string beta;
  };

  struct LitChain {
    std::vector<SegmentNode> segments;
  };

  struct BoxSlot {
    std::string alpha;
    std::string beta;
  };

  std::map<std::string, LitChain> chains;
  std::vector<std::string> literalOrder;
  // node id -> (clause index, slot 1/2); absent for plain size-1 nodes
  std::map<std::string, std::pair<int, int>> boxedAlpha;
  std::map<std::string, std::pair<int, int>> boxedBeta;

  SegmentNode& appendSegment(const std::string& lit) {
    auto& chain = chains[lit];
    if (chain.segments.empty())
      literalOrder.push_back(lit);
    int i = static_cast<int>(chain.segments.size()) + 1;
    chain.segments.push_back({"a_" + lit + "_" + std::to_string(i),
                              "b_" + lit + "_" + std::to_string(i)});
    return chain.segments.back();
  }

  BoxSlot addOccurrence(const Literal& lit) {
    auto it = chains.find(lit.name);
    if (it == chains.end()) {
      if (lit.negated)
        throwError(ErrorKind::InvalidArgument,
                   "first occurrence of literal '" + lit.name +
                       "' is negated; normalize the clause list first");
      // First occurrence: two fresh pairs, the first of which is the
      // clause-visible one. Leaves the chain end unboxed.
      SegmentNode first = appendSegment(lit.name);
      appendSegment(lit.name);
      return {first.alpha, first.beta};
    }
    if (!lit.negated) {
      // Positive re-occurrence: one fresh pair, boxed whole.
      SegmentNode seg = appendSegment(lit.name);
      return {seg.alpha, seg.beta};
    }
    // Negated re-occurrence: the box pairs the previous chain end with the
    // fresh alpha, so the selected arc sits on an even cycle position. When
    // the chain end already belongs to another clause, pad with one neutral
    // pair first.
    if (boxedBeta.count(it->second.segments.back().beta))
      appendSegment(lit.name);
    std::string previousEnd = it->second.segments.back().beta;
    SegmentNode seg = appendSegment(lit.name);
    return {seg.alpha, previousEnd};
  }
};

} // namespace

Max2SatInstance encodeMax2Sat(const std::vector<Clause2>& clauses) {
  // Invariant check: first occurrence of every name must be positive.
  {
    std::set<std::string> seen;
    for (const auto& clause : clauses) {
      for (const Literal* lit : {&clause.first, &clause.second}) {
        if (seen.insert(lit->name).second && lit->negated)
          throwError(ErrorKind::InvalidArgument,
                     "first occurrence of literal '" + lit->name +
                         "' is negated; normalize the clause list first");
      }
    }
  }

  CycleBuilder builder;
  for (size_t c = 0; c < clauses.size(); ++c) {
    // Marks must land before the second slot is placed: when both slots touch
    // the same literal chain, the padding rule has to see the first one.
    CycleBuilder::BoxSlot slot1 = builder.addOccurrence(clauses[c].first);
    builder.boxedAlpha[slot1.alpha] = {static_cast<int>(c), 1};
    builder.boxedBeta[slot1.beta] = {static_cast<int>(c), 1};
    CycleBuilder::BoxSlot slot2 = builder.addOccurrence(clauses[c].second);
    builder.boxedAlpha[slot2.alpha] = {static_cast<int>(c), 2};
    builder.boxedBeta[slot2.beta] = {static_cast<int>(c), 2};
  }

  Max2SatInstance instance;
  instance.clauses = clauses;
  ArrayGraph& graph = instance.graph;

  auto clauseEqId = [](int c) { return "c" + std::to_string(c + 1) + "_e"; };
  auto clauseVarId = [](int c) { return "c" + std::to_string(c + 1) + "_v"; };

  for (size_t c = 0; c < clauses.size(); ++c) {
    graph.addEquation(clauseEqId(static_cast<int>(c)), "clause " + std::to_string(c + 1), {2});
    graph.addVariable(clauseVarId(static_cast<int>(c)), "clause " + std::to_string(c + 1), {2});
  }
  for (const auto& lit : builder.literalOrder) {
    for (const auto& segment : builder.chains[lit].segments) {
      if (!builder.boxedAlpha.count(segment.alpha))
        graph.addVariable(segment.alpha, segment.alpha, {1});
      if (!builder.boxedBeta.count(segment.beta))
        graph.addEquation(segment.beta, segment.beta, {1});
    }
  }

  auto alphaRef = [&](const std::string& alpha) -> std::pair<std::string, Point> {
    auto it = builder.boxedAlpha.find(alpha);
    if (it == builder.boxedAlpha.end())
      return {alpha, {1}};
    return {clauseVarId(it->second.first), {it->second.second}};
  };
  auto betaRef = [&](const std::string& beta) -> std::pair<std::string, Point> {
    auto it = builder.boxedBeta.find(beta);
    if (it == builder.boxedBeta.end())
      return {beta, {1}};
    return {clauseEqId(it->second.first), {it->second.second}};
  };

  // Edge accumulation per (equation array, variable array) pair.
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<Point, Point>>> arcPairs;
  auto addEdge = [&](const std::string& alpha, const std::string& beta) -> ScalarEdgeRef {
    auto [varId, varIndex] = alphaRef(alpha);
    auto [eqId, eqIndex] = betaRef(beta);
    arcPairs[{eqId, varId}].emplace_back(eqIndex, varIndex);
    return {eqId, varId, eqIndex, varIndex};
  };

  for (const auto& lit : builder.literalOrder) {
    const auto& segments = builder.chains[lit].segments;
    std::vector<ScalarEdgeRef>& cycle = instance.map.cycles[lit];
    for (size_t i = 0; i < segments.size(); ++i) {
      cycle.push_back(addEdge(segments[i].alpha, segments[i].beta));
      const std::string& nextAlpha =
          (i + 1 < segments.size()) ? segments[i + 1].alpha : segments[0].alpha;
      cycle.push_back(addEdge(nextAlpha, segments[i].beta));
    }
  }

  for (size_t c = 0; c < clauses.size(); ++c) {
    ReductionMap::ClauseRef ref;
    ref.eqId = clauseEqId(static_cast<int>(c));
    ref.varId = clauseVarId(static_cast<int>(c));
    ref.first = {ref.eqId, ref.varId, {1}, {1}};
    ref.second = {ref.eqId, ref.varId, {2}, {2}};
    instance.map.clauses.push_back(std::move(ref));
  }

  std::map<std::string, Shape> eqShapes;
  std::map<std::string, Shape> varShapes;
  for (size_t c = 0; c < clauses.size(); ++c) {
    eqShapes[clauseEqId(static_cast<int>(c))] = {2};
    varShapes[clauseVarId(static_cast<int>(c))] = {2};
  }
  for (const auto& lit : builder.literalOrder) {
    for (const auto& segment : builder.chains[lit].segments) {
      if (!builder.boxedAlpha.count(segment.alpha))
        varShapes[segment.alpha] = {1};
      if (!builder.boxedBeta.count(segment.beta))
        eqShapes[segment.beta] = {1};
    }
  }
  for (auto& [key, pairs] : arcPairs) {
    graph.addArc(key.first, key.second,
                 IncidenceMap::fromPairs(eqShapes.at(key.first), varShapes.at(key.second), pairs));
  }

  graph.freeze();
  return instance;
}

namespace {

bool edgeMatched(const ArrayGraph& graph, const ScalarEdgeRef& ref) {
  int eq = graph.findEquation(ref.eqId);
  int var = graph.findVariable(ref.varId);
  if (eq < 0 || var < 0)
    throwError(ErrorKind::InvalidArgument, "reduction map references unknown nodes " + ref.eqId +
                                               " -- " + ref.varId);
  for (int arcIndex : graph.arcsOfEquation(eq)) {
    const Arc& arc = graph.arc(arcIndex);
    if (arc.var == var)
      return arc.matching.contains(ref.eqIndex, ref.varIndex);
  }
  throwError(ErrorKind::InvalidArgument,
             "reduction map references a missing arc " + ref.eqId + " -- " + ref.varId);
}

} // namespace

std::map<std::string, bool> decodeAssignment(const ArrayGraph& matched, const ReductionMap& map) {
  if (matched.matchedScalarCount() != matched.scalarEquationCount())
    throwError(ErrorKind::Validation, "assignment decoding requires a complete matching");

  std::map<std::string, bool> assignment;
  for (const auto& [lit, cycle] : map.cycles) {
    if (cycle.empty() || cycle.size() % 2 != 0)
      throwError(ErrorKind::Validation, "literal cycle of odd length in the reduction map");
    bool value = edgeMatched(matched, cycle.front());
    // A complete matching picks exactly the odd- or exactly the even-numbered
    // arcs of every cycle.
    for (size_t i = 0; i < cycle.size(); ++i) {
      bool expected = (i % 2 == 0) ? value : !value;
      if (edgeMatched(matched, cycle[i]) != expected)
        throwError(ErrorKind::Validation,
                   "matching does not alternate along the cycle of literal '" + lit + "'");
    }
    assignment[lit] = value;
  }
  return assignment;
}

int countSatisfied(const std::vector<Clause2>& clauses,
                   const std::map<std::string, bool>& assignment) {
  auto value = [&](const Literal& lit) {
    auto it = assignment.find(lit.name);
    if (it == assignment.end())
      throwError(ErrorKind::InvalidArgument, "literal '" + lit.name + "' has no assigned value");
    return lit.negated ? !it->second : it->second;
  };
  int satisfied = 0;
  for (const auto& clause : clauses) {
    if (value(clause.first) && value(clause.second))
      ++satisfied;
  }
  return satisfied;
}

int maxSatisfiable(const std::vector<Clause2>& clauses) {
  std::vector<std::string> names;
  for (const auto& clause : clauses) {
    names.push_back(clause.first.name);
    names.push_back(clause.second.name);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.size() > 20)
    throwError(ErrorKind::LimitExceeded, "brute-force assignment search limited to 20 literals");

  int best = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << names.size()); ++bits) {
    std::map<std::string, bool> assignment;
    for (size_t i = 0; i < names.size(); ++i)
      assignment[names[i]] = (bits >> i) & 1;
    best = std::max(best, countSatisfied(clauses, assignment));
  }
  return best;
}

ArrayGraph genRandom(std::uint64_t seed, int eqNodes, int varNodes, int maxSize, double density) {
  if (eqNodes < 1 || varNodes < 1 || maxSize < 1)
    throwError(ErrorKind::InvalidArgument, "random graph parameters must be positive");
  if (density <= 0.0 || density > 1.0)
    throwError(ErrorKind::InvalidArgument, "density must be in (0, 1]");

  std::mt19937_64 rng(seed);
  auto nextInt = [&rng](Index lo, Index hi) {
    return lo + static_cast<Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  auto pad = [](int value) {
    std::string s = std::to_string(value);
    return s.size() < 2 ? "0" + s : s;
  };

  ArrayGraph graph;
  std::vector<Index> eqSizes;
  std::vector<Index> varSizes;
  for (int i = 0; i < eqNodes; ++i) {
    eqSizes.push_back(nextInt(1, maxSize));
    graph.addEquation("e" + pad(i + 1), "e" + pad(i + 1), {eqSizes.back()});
  }
  for (int i = 0; i < varNodes; ++i) {
    varSizes.push_back(nextInt(1, maxSize));
    graph.addVariable("v" + pad(i + 1), "v" + pad(i + 1), {varSizes.back()});
  }

  for (int i = 0; i < eqNodes; ++i) {
    for (int j = 0; j < varNodes; ++j) {
      double draw = static_cast<double>(rng() % 1'000'000) / 1'000'000.0;
      if (draw >= density)
        continue;
      Index rows = eqSizes[static_cast<size_t>(i)];
      Index cols = varSizes[static_cast<size_t>(j)];
      std::vector<IncidenceMap::Element> elements;
      Index diagonals = nextInt(1, 2);
      for (Index d = 0; d < diagonals; ++d) {
        Index delta = nextInt(1 - rows, cols - 1);
        Index lo = std::max<Index>(1, 1 - delta);
        Index hi = std::min<Index>(rows, cols - delta);
        Index a = nextInt(lo, hi);
        Index b = nextInt(a, hi);
        elements.push_back({IndexSet(MultidimensionalRange({{a, b}})), {delta}});
      }
      graph.addArc("e" + pad(i + 1), "v" + pad(j + 1),
                   IncidenceMap({rows}, {cols}, std::move(elements)));
    }
  }
  graph.freeze();
  return graph;
}

} // namespace aamatch
