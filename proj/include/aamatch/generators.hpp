#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aamatch/array_graph.hpp"

namespace aamatch {

struct Literal {
  std::string name;
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

/// A conjunctive pair of literals: the clause form consumed by the graph
/// encoder. Unary clauses are stored with the literal duplicated. Across the
/// ordered clause list, the first occurrence of every name must be positive;
/// normalizeClauses rewrites inputs into this form.
struct Clause2 {
  Literal first;
  Literal second;
};

struct ParsedClauses {
  std::vector<Clause2> clauses;
  int unaryDuplicated = 0;
};

/// Text format: one clause per line, one or two whitespace-separated literals,
/// '!' prefix for negation, '#' starts a comment.
ParsedClauses parseClauses(const std::string& text);

struct NormalizationReport {
  /// Literals whose first occurrence was negated, replaced by their
  /// complement under a fresh name.
  std::map<std::string, std::string> complementRenames;
};

NormalizationReport normalizeClauses(std::vector<Clause2>& clauses);

/// Scalar entry of an arc, addressed by node ids and index tuples.
struct ScalarEdgeRef {
  std::string eqId;
  std::string varId;
  Point eqIndex;
  Point varIndex;
};

/// Bookkeeping produced by the encoder, enough to read an assignment back
/// from a matched graph: per literal the ordered cycle edges (the first one
/// decides the literal value), per clause its pair arc and the two entries
/// whose joint selection marks the clause satisfied.
struct ReductionMap {
  struct ClauseRef {
    std::string eqId;
    std::string varId;
    ScalarEdgeRef first;
    ScalarEdgeRef second;
  };
  std::map<std::string, std::vector<ScalarEdgeRef>> cycles;
  std::vector<ClauseRef> clauses;
};

struct Max2SatInstance {
  std::vector<Clause2> clauses;
  ArrayGraph graph;
  ReductionMap map;
};

/// Discretised wire: one derivative variable of size n, boundary equations of
/// size 1 and an interior equation of size n-2, each arc a single diagonal.
ArrayGraph genWire(Index n);

/// Encodes an ordered list of conjunctive pair clauses as an array graph in
/// which minimizing the matched-arc count maximizes the number of satisfied
/// clauses. Construction is linear in the clause count.
Max2SatInstance encodeMax2Sat(const std::vector<Clause2>& clauses);

/// Reads the literal assignment off a completely matched encoder graph.
std::map<std::string, bool> decodeAssignment(const ArrayGraph& matched, const ReductionMap& map);

/// Number of clauses whose two literals both hold under the assignment.
int countSatisfied(const std::vector<Clause2>& clauses,
                   const std::map<std::string, bool>& assignment);

/// Brute force over all assignments of the names appearing in the clauses.
int maxSatisfiable(const std::vector<Clause2>& clauses);

/// Deterministic random one-dimensional graph; incidence matrices are built
/// from random diagonals so every instance is exactly representable.
ArrayGraph genRandom(std::uint64_t seed, int eqNodes, int varNodes, int maxSize, double density);

} // namespace aamatch
