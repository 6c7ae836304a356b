#include "aamatch.h"

#include <cstring>
#include <string>

#include "aamatch/array_graph.hpp"
#include "aamatch/error.hpp"
#include "aamatch/generators.hpp"
#include "aamatch/json_io.hpp"
#include "aamatch/oracle.hpp"
#include "aamatch/report.hpp"

struct aam_graph {
  aamatch::ArrayGraph graph;
};

namespace {

thread_local std::string lastError;

aam_status statusOf(const aamatch::Error& e) {
  switch (e.kind()) {
  case aamatch::ErrorKind::InvalidArgument:
    return AAM_ERROR_INVALID_ARGUMENT;
  case aamatch::ErrorKind::Parse:
    return AAM_ERROR_PARSE;
  case aamatch::ErrorKind::Validation:
    return AAM_ERROR_VALIDATION;
  case aamatch::ErrorKind::LimitExceeded:
    return AAM_ERROR_LIMIT_EXCEEDED;
  case aamatch::ErrorKind::Internal:
    return AAM_ERROR_INTERNAL;
  }
  return AAM_ERROR_INTERNAL;
}

template <typename Fn> aam_status guarded(Fn&& fn) {
  try {
    fn();
    lastError.clear();
    return AAM_OK;
  } catch (const aamatch::Error& e) {
    lastError = e.what();
    return statusOf(e);
  } catch (const std::exception& e) {
    lastError = e.what();
    return AAM_ERROR_INTERNAL;
  }
}

char* copyString(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void requireArg(bool ok, const char* message) {
  if (!ok)
    aamatch::throwError(aamatch::ErrorKind::InvalidArgument, message);
}

} // namespace

extern "C" {

const char* aam_version(void) { return "0.1.0"; }

const char* aam_last_error(void) { return lastError.c_str(); }

void aam_string_free(char* text) { delete[] text; }

void aam_graph_free(aam_graph* graph) { delete graph; }

aam_status aam_graph_from_json(const char* json_text, aam_graph** out_graph) {
  return guarded([&] {
    requireArg(json_text != nullptr && out_graph != nullptr, "null argument");
    auto json = aamatch::parseJsonText(json_text, "graph");
    *out_graph = new aam_graph{aamatch::graphFromJson(json)};
  });
}

aam_status aam_graph_to_json(const aam_graph* graph, char** out_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_json != nullptr, "null argument");
    *out_json = copyString(aamatch::dumpJson(aamatch::graphToJson(graph->graph)));
  });
}

aam_status aam_graph_clone(const aam_graph* graph, aam_graph** out_graph) {
  return guarded([&] {
    requireArg(graph != nullptr && out_graph != nullptr, "null argument");
    *out_graph = new aam_graph{graph->graph};
  });
}

aam_status aam_graph_stats_json(const aam_graph* graph, char** out_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_json != nullptr, "null argument");
    const auto& g = graph->graph;
    aamatch::Json stats;
    stats["equations"] = g.equations().size();
    stats["variables"] = g.variables().size();
    stats["arcs"] = g.arcs().size();
    stats["scalarEquations"] = g.scalarEquationCount();
    stats["scalarVariables"] = g.scalarVariableCount();
    stats["matchedScalars"] = g.matchedScalarCount();
    stats["matchedArcs"] = g.matchedArcCount();
    stats["complete"] = g.matchedScalarCount() == g.scalarEquationCount();
    *out_json = copyString(aamatch::dumpJson(stats));
  });
}

aam_status aam_graph_validate(const aam_graph* graph, int32_t complete,
                              char** out_violations_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_violations_json != nullptr, "null argument");
    const aamatch::ArrayGraph* target = &graph->graph;
    aamatch::ArrayGraph view;
    if (complete != 0) {
      view = graph->graph.matchedView();
      target = &view;
    }
    auto violations = target->validate(complete != 0 ? aamatch::ValidationMode::Complete
                                                     : aamatch::ValidationMode::Partial);
    aamatch::Json out = aamatch::Json::array();
    for (const auto& violation : violations) {
      aamatch::Json v;
      v["condition"] = violation.condition;
      v["eq"] = violation.eqId;
      v["var"] = violation.varId;
      v["message"] = violation.message;
      out.push_back(std::move(v));
    }
    *out_violations_json = copyString(aamatch::dumpJson(out));
  });
}

aam_status aam_gen_wire(int64_t volumes, aam_graph** out_graph) {
  return guarded([&] {
    requireArg(out_graph != nullptr, "null argument");
    *out_graph = new aam_graph{aamatch::genWire(volumes)};
  });
}

aam_status aam_gen_random(uint64_t seed, int32_t eq_nodes, int32_t var_nodes, int32_t max_size,
                          double density, aam_graph** out_graph) {
  return guarded([&] {
    requireArg(out_graph != nullptr, "null argument");
    *out_graph = new aam_graph{aamatch::genRandom(seed, eq_nodes, var_nodes, max_size, density)};
  });
}

aam_status aam_gen_max2sat(const char* clauses_text, aam_graph** out_graph, char** out_map_json) {
  return guarded([&] {
    requireArg(clauses_text != nullptr && out_graph != nullptr && out_map_json != nullptr,
               "null argument");
    aamatch::ParsedClauses parsed = aamatch::parseClauses(clauses_text);
    aamatch::NormalizationReport normalization = aamatch::normalizeClauses(parsed.clauses);
    aamatch::Max2SatInstance instance = aamatch::encodeMax2Sat(parsed.clauses);
    *out_map_json = copyString(aamatch::dumpJson(
        aamatch::reductionMapToJson(instance.map, instance.clauses, normalization)));
    *out_graph = new aam_graph{std::move(instance.graph)};
  });
}

aam_status aam_run_match(aam_graph* graph, const aam_match_options* options,
                         char** out_report_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_report_json != nullptr, "null argument");
    aamatch::PipelineOptions pipeline;
    if (options != nullptr) {
      pipeline.runSimplify = options->run_simplify != 0;
      pipeline.runMatch = options->run_match != 0;
      pipeline.maxIterations = options->max_iterations;
      pipeline.includeTimings = options->include_timings != 0;
      pipeline.withOracle = options->with_oracle != 0;
    }
    aamatch::RunReport report = aamatch::runPipeline(graph->graph, pipeline);
    *out_report_json = copyString(aamatch::dumpJson(aamatch::reportToJson(report)));
  });
}

aam_status aam_flatten_json(const aam_graph* graph, uint64_t scalar_cap, char** out_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_json != nullptr, "null argument");
    if (scalar_cap == 0)
      scalar_cap = aamatch::kDefaultExpansionCap;
    aamatch::ScalarGraph sg = aamatch::flatten(graph->graph, scalar_cap);
    *out_json = copyString(aamatch::dumpJson(aamatch::scalarGraphToJson(sg)));
  });
}

aam_status aam_oracle_hk_json(const aam_graph* graph, uint64_t scalar_cap, char** out_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_json != nullptr, "null argument");
    if (scalar_cap == 0)
      scalar_cap = aamatch::kDefaultExpansionCap;
    aamatch::ScalarGraph sg = aamatch::flatten(graph->graph, scalar_cap);
    std::size_t currentMatched = sg.matchedCount();
    std::size_t maximum = aamatch::oracle::hopcroftKarp(sg);
    aamatch::Json out;
    out["scalarEquations"] = sg.equations.size();
    out["scalarVariables"] = sg.variables.size();
    out["maximumMatching"] = maximum;
    out["currentMatching"] = currentMatched;
    out["graphIsMaximum"] = currentMatched == maximum;
    *out_json = copyString(aamatch::dumpJson(out));
  });
}

aam_status aam_oracle_omega_json(const aam_graph* graph, uint64_t scalar_eq_cap,
                                 int32_t use_current_as_hint, char** out_json) {
  return guarded([&] {
    requireArg(graph != nullptr && out_json != nullptr, "null argument");
    if (scalar_eq_cap == 0)
      scalar_eq_cap = 24;
    const aamatch::ArrayGraph* hint = nullptr;
    if (use_current_as_hint != 0 &&
        graph->graph.matchedScalarCount() == graph->graph.scalarEquationCount() &&
        graph->graph.scalarEquationCount() > 0)
      hint = &graph->graph;
    auto result = aamatch::oracle::optimalOmega(graph->graph, scalar_eq_cap, hint);
    aamatch::Json out;
    out["feasible"] = result.feasible;
    if (result.feasible) {
      out["minimalMatchedArcs"] = result.omega;
      if (use_current_as_hint != 0)
        out["currentMatchedArcs"] = graph->graph.matchedArcCount();
      out["witness"] = aamatch::graphToJson(result.witness);
    }
    out["statesExplored"] = result.statesExplored;
    *out_json = copyString(aamatch::dumpJson(out));
  });
}

aam_status aam_max2sat_decode(const aam_graph* graph, const char* map_json,
                              char** out_assignment_json) {
  return guarded([&] {
    requireArg(graph != nullptr && map_json != nullptr && out_assignment_json != nullptr,
               "null argument");
    aamatch::ReductionMap map;
    std::vector<aamatch::Clause2> clauses;
    aamatch::reductionMapFromJson(aamatch::parseJsonText(map_json, "reduction map"), map, clauses);
    auto assignment = aamatch::decodeAssignment(graph->graph, map);
    aamatch::Json out;
    aamatch::Json values = aamatch::Json::object();
    for (const auto& [name, value] : assignment)
      values[name] = value;
    out["assignment"] = std::move(values);
    out["satisfied"] = aamatch::countSatisfied(clauses, assignment);
    out["clauses"] = clauses.size();
    *out_assignment_json = copyString(aamatch::dumpJson(out));
  });
}

aam_status aam_max2sat_count_satisfied(const char* map_json, const char* assignment_json,
                                       int32_t* out_satisfied) {
  return guarded([&] {
    requireArg(map_json != nullptr && assignment_json != nullptr && out_satisfied != nullptr,
               "null argument");
    aamatch::ReductionMap map;
    std::vector<aamatch::Clause2> clauses;
    aamatch::reductionMapFromJson(aamatch::parseJsonText(map_json, "reduction map"), map, clauses);
    auto parsed = aamatch::parseJsonText(assignment_json, "assignment");
    const auto& values =
        parsed.contains("assignment") ? parsed.at("assignment") : parsed;
    std::map<std::string, bool> assignment;
    for (const auto& [name, value] : values.items())
      assignment[name] = value.get<bool>();
    *out_satisfied = aamatch::countSatisfied(clauses, assignment);
  });
}

} // extern "C"
