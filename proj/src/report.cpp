#include "aamatch/report.hpp"

#include <chrono>
#include <sstream>

#include "aamatch/matching.hpp"
#include "aamatch/oracle.hpp"

namespace aamatch {

RunReport runPipeline(ArrayGraph& graph, const PipelineOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto millisSince = [](Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  RunReport report;
  report.includeTimings = options.includeTimings;
  report.input.equations = graph.equations().size();
  report.input.variables = graph.variables().size();
  report.input.arcs = graph.arcs().size();
  report.input.scalarEquations = graph.scalarEquationCount();
  report.input.scalarVariables = graph.scalarVariableCount();
  report.totalScalarEquations = report.input.scalarEquations;
  report.matchedArcsBefore = graph.matchedArcCount();

  auto totalStart = Clock::now();
  if (options.runSimplify) {
    auto start = Clock::now();
    SimplifyResult simplified = simplify(graph);
    RunReport::Phase phase;
    phase.kind = "simplify";
    phase.forcedMatches = simplified.forced.size();
    phase.matchedScalars = graph.matchedScalarCount();
    phase.millis = millisSince(start);
    report.phases.push_back(std::move(phase));
  }
  if (options.runMatch) {
    auto start = Clock::now();
    MatchOptions matchOptions;
    matchOptions.maxIterations = options.maxIterations;
    MatchResult matched = match(graph, matchOptions);
    RunReport::Phase phase;
    phase.kind = "match";
    phase.iterations = matched.phases.size();
    for (const auto& p : matched.phases) {
      phase.pathsApplied += static_cast<std::uint64_t>(p.pathsApplied);
      phase.perIteration.push_back(
          {static_cast<std::uint64_t>(p.pathsApplied), p.matchedScalars});
    }
    phase.matchedScalars = graph.matchedScalarCount();
    phase.millis = millisSince(start);
    report.phases.push_back(std::move(phase));
  }
  report.totalMillis = millisSince(totalStart);

  report.matchedArcsAfter = graph.matchedArcCount();
  report.matchedScalarEquations = graph.matchedScalarCount();
  report.complete = report.matchedScalarEquations == report.totalScalarEquations;

  if (options.withOracle) {
    ScalarGraph sg = flatten(graph, options.oracleCap);
    RunReport::OracleComparison comparison;
    comparison.maximumMatching = oracle::hopcroftKarp(sg);
    comparison.matchesMaximum = comparison.maximumMatching == report.matchedScalarEquations;
    report.oracle = comparison;
  }
  return report;
}

Json reportToJson(const RunReport& report) {
  Json out;
  out["schema"] = kSchemaVersion;
  Json input;
  input["equations"] = report.input.equations;
  input["variables"] = report.input.variables;
  input["arcs"] = report.input.arcs;
  input["scalarEquations"] = report.input.scalarEquations;
  input["scalarVariables"] = report.input.scalarVariables;
  out["input"] = std::move(input);

  Json phases = Json::array();
  for (const auto& phase : report.phases) {
    Json p;
    p["kind"] = phase.kind;
    if (phase.kind == "simplify") {
      p["forcedMatches"] = phase.forcedMatches;
    } else {
      p["iterations"] = phase.iterations;
      p["pathsApplied"] = phase.pathsApplied;
      Json iterations = Json::array();
      for (const auto& iteration : phase.perIteration) {
        Json i;
        i["paths"] = iteration.paths;
        i["matchedScalars"] = iteration.matchedScalars;
        iterations.push_back(std::move(i));
      }
      p["perIteration"] = std::move(iterations);
    }
    p["matchedScalars"] = phase.matchedScalars;
    if (report.includeTimings)
      p["millis"] = phase.millis;
    phases.push_back(std::move(p));
  }
  out["phases"] = std::move(phases);

  Json matchedArcs;
  matchedArcs["before"] = report.matchedArcsBefore;
  matchedArcs["after"] = report.matchedArcsAfter;
  out["matchedArcs"] = std::move(matchedArcs);
  Json scalars;
  scalars["matched"] = report.matchedScalarEquations;
  scalars["total"] = report.totalScalarEquations;
  out["scalars"] = std::move(scalars);
  out["complete"] = report.complete;
  if (report.includeTimings)
    out["totalMillis"] = report.totalMillis;
  if (report.oracle) {
    Json oracle;
    oracle["maximumMatching"] = report.oracle->maximumMatching;
    oracle["matchesMaximum"] = report.oracle->matchesMaximum;
    out["oracle"] = std::move(oracle);
  }
  return out;
}

std::string reportToText(const RunReport& report) { return reportJsonToText(reportToJson(report)); }

std::string reportJsonToText(const Json& json) {
  std::ostringstream os;
  const auto& input = json.at("input");
  os << "input: " << input.at("equations").get<std::uint64_t>() << " equation nodes, "
     << input.at("variables").get<std::uint64_t>() << " variable nodes, "
     << input.at("arcs").get<std::uint64_t>() << " arcs ("
     << input.at("scalarEquations").get<std::uint64_t>() << " scalar equations, "
     << input.at("scalarVariables").get<std::uint64_t>() << " scalar variables)\n";
  for (const auto& phase : json.at("phases")) {
    os << "phase " << phase.at("kind").get<std::string>() << ": ";
    if (phase.contains("forcedMatches"))
      os << phase.at("forcedMatches").get<std::uint64_t>() << " forced matches, ";
    if (phase.contains("iterations"))
      os << phase.at("iterations").get<std::uint64_t>() << " iterations, "
         << phase.at("pathsApplied").get<std::uint64_t>() << " paths, ";
    os << phase.at("matchedScalars").get<std::uint64_t>() << " scalars matched";
    if (phase.contains("millis"))
      os << " (" << phase.at("millis").get<double>() << " ms)";
    os << "\n";
  }
  os << "matched arcs: " << json.at("matchedArcs").at("before").get<int>() << " -> "
     << json.at("matchedArcs").at("after").get<int>() << "\n";
  os << "matched scalar equations: " << json.at("scalars").at("matched").get<std::uint64_t>()
     << "/" << json.at("scalars").at("total").get<std::uint64_t>() << "\n";
  os << "complete: " << (json.at("complete").get<bool>() ? "yes" : "no") << "\n";
  if (json.contains("totalMillis"))
    os << "total: " << json.at("totalMillis").get<double>() << " ms\n";
  if (json.contains("oracle")) {
    os << "oracle maximum matching: "
       << json.at("oracle").at("maximumMatching").get<std::uint64_t>() << " ("
       << (json.at("oracle").at("matchesMaximum").get<bool>() ? "matched" : "NOT matched")
       << ")\n";
  }
  return os.str();
}

} // namespace aamatch
