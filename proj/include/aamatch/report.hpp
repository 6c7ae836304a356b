#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aamatch/array_graph.hpp"
#include "aamatch/json_io.hpp"

namespace aamatch {

struct PipelineOptions {
  bool runSimplify = true;
  bool runMatch = true;
  std::uint64_t maxIterations = 0; // 0: default
  /// Wall-clock figures are left out of reports unless requested, so repeated
  /// runs stay byte-identical.
  bool includeTimings = false;
  /// Compare the result against the flattened maximum matching.
  bool withOracle = false;
  std::uint64_t oracleCap = kDefaultExpansionCap;
};

struct RunReport {
  struct Counts {
    std::uint64_t equations = 0;
    std::uint64_t variables = 0;
    std::uint64_t arcs = 0;
    std::uint64_t scalarEquations = 0;
    std::uint64_t scalarVariables = 0;
  };
  struct Iteration {
    std::uint64_t paths = 0;
    std::uint64_t matchedScalars = 0;
  };
  struct Phase {
    std::string kind; // "simplify" or "match"
    std::uint64_t forcedMatches = 0; // simplify only
    std::uint64_t iterations = 0;    // match only
    std::uint64_t pathsApplied = 0;  // match only
    std::vector<Iteration> perIteration; // match only
    std::uint64_t matchedScalars = 0;
    double millis = 0.0;
  };
  struct OracleComparison {
    std::uint64_t maximumMatching = 0;
    bool matchesMaximum = false;
  };

  Counts input;
  std::vector<Phase> phases;
  int matchedArcsBefore = 0;
  int matchedArcsAfter = 0;
  std::uint64_t matchedScalarEquations = 0;
  std::uint64_t totalScalarEquations = 0;
  bool complete = false;
  bool includeTimings = false;
  double totalMillis = 0.0;
  std::optional<OracleComparison> oracle;
};

/// Runs simplify and/or match on the graph in place and summarizes the run.
RunReport runPipeline(ArrayGraph& graph, const PipelineOptions& options);

Json reportToJson(const RunReport& report);
std::string reportToText(const RunReport& report);
std::string reportJsonToText(const Json& json);

} // namespace aamatch
