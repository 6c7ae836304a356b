// Command-line front end for the array-aware matching engine. Talks to the
// engine exclusively through the C API in aamatch.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aamatch.h"

namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIncomplete = 2;

struct GraphDeleter {
  void operator()(aam_graph* g) const { aam_graph_free(g); }
};
using GraphPtr = std::unique_ptr<aam_graph, GraphDeleter>;

struct StringDeleter {
  void operator()(char* s) const { aam_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitError);
}

void check(aam_status status) {
  if (status != AAM_OK)
    fail(aam_last_error());
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail("cannot write '" + path + "'");
  out << content;
}

GraphPtr loadGraph(const std::string& path) {
  std::string text = readFile(path);
  aam_graph* graph = nullptr;
  check(aam_graph_from_json(text.c_str(), &graph));
  return GraphPtr(graph);
}

void writeGraph(const aam_graph* graph, const std::string& path) {
  char* json = nullptr;
  check(aam_graph_to_json(graph, &json));
  StringPtr guard(json);
  writeFile(path, json);
}

std::string reportText(const OrderedJson& report) {
  std::ostringstream os;
  const auto& input = report.at("input");
  os << "input: " << input.at("equations") << " equation nodes, " << input.at("variables")
     << " variable nodes, " << input.at("arcs") << " arcs (" << input.at("scalarEquations")
     << " scalar equations, " << input.at("scalarVariables") << " scalar variables)\n";
  for (const auto& phase : report.at("phases")) {
    os << "phase " << phase.at("kind").get<std::string>() << ": ";
    if (phase.contains("forcedMatches"))
      os << phase.at("forcedMatches") << " forced matches, ";
    if (phase.contains("iterations"))
      os << phase.at("iterations") << " iterations, " << phase.at("pathsApplied") << " paths, ";
    os << phase.at("matchedScalars") << " scalars matched";
    if (phase.contains("millis"))
      os << " (" << phase.at("millis").get<double>() << " ms)";
    os << "\n";
  }
  os << "matched arcs: " << report.at("matchedArcs").at("before") << " -> "
     << report.at("matchedArcs").at("after") << "\n";
  os << "matched scalar equations: " << report.at("scalars").at("matched") << "/"
     << report.at("scalars").at("total") << "\n";
  os << "complete: " << (report.at("complete").get<bool>() ? "yes" : "no") << "\n";
  if (report.contains("totalMillis"))
    os << "total: " << report.at("totalMillis").get<double>() << " ms\n";
  if (report.contains("oracle"))
    os << "oracle maximum matching: " << report.at("oracle").at("maximumMatching") << " ("
       << (report.at("oracle").at("matchesMaximum").get<bool>() ? "matched" : "NOT matched")
       << ")\n";
  return os.str();
}

void emit(const std::string& content, const std::string& outPath) {
  if (outPath.empty())
    std::cout << content;
  else
    writeFile(outPath, content);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"array-aware equation/variable matching"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aam_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "generate benchmark and test graphs");
  gen->require_subcommand(1);

  std::string genOut;
  int64_t wireN = 0;
  auto* genWireCmd = gen->add_subcommand("wire", "discretised wire model");
  genWireCmd->add_option("--n", wireN, "number of finite volumes")->required();
  genWireCmd->add_option("-o,--output", genOut, "output graph file (default stdout)");

  uint64_t rndSeed = 1;
  int32_t rndEq = 4, rndVar = 4, rndSize = 4;
  double rndDensity = 0.5;
  std::string rndOut;
  auto* genRandomCmd = gen->add_subcommand("random", "seeded random graph");
  genRandomCmd->add_option("--seed", rndSeed, "random seed")->required();
  genRandomCmd->add_option("--eq-nodes", rndEq, "equation node count");
  genRandomCmd->add_option("--var-nodes", rndVar, "variable node count");
  genRandomCmd->add_option("--max-size", rndSize, "maximum array size");
  genRandomCmd->add_option("--density", rndDensity, "arc probability in (0,1]");
  genRandomCmd->add_option("-o,--output", rndOut, "output graph file (default stdout)");

  std::string satClausesPath, satOut, satMapOut;
  auto* genSatCmd = gen->add_subcommand("max2sat", "clause-list reduction graph");
  genSatCmd->add_option("--clauses", satClausesPath, "clause file (one clause per line)")
      ->required();
  genSatCmd->add_option("-o,--output", satOut, "output graph file (default stdout)");
  genSatCmd->add_option("--map", satMapOut, "decode-map output file");

  // match
  std::string matchIn, matchOut, matchReportPath, matchFormat = "text";
  bool simplifyOnly = false, noSimplify = false, withTimings = false, withOracle = false;
  uint64_t maxIterations = 0;
  uint64_t matchSeed = 0;
  auto* matchCmd = app.add_subcommand("match", "run the matching pipeline");
  matchCmd->add_option("input", matchIn, "graph file")->required();
  matchCmd->add_option("-o,--output", matchOut, "matched graph output file");
  matchCmd->add_option("--report", matchReportPath, "report output file (default stdout)");
  matchCmd->add_flag("--simplify-only", simplifyOnly, "stop after the forced-match pass");
  matchCmd->add_flag("--no-simplify", noSimplify, "skip the forced-match pass");
  matchCmd->add_option("--max-iterations", maxIterations, "augmenting phase cap (0: default)");
  matchCmd->add_option("--seed", matchSeed,
                       "reserved for randomized strategies; the pipeline is deterministic");
  matchCmd->add_option("--format", matchFormat, "report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  matchCmd->add_flag("--timings", withTimings, "include wall-clock times in the report");
  matchCmd->add_flag("--with-oracle", withOracle, "compare against the flattened maximum");

  // flatten
  std::string flattenIn, flattenOut;
  uint64_t flattenCap = 0;
  auto* flattenCmd = app.add_subcommand("flatten", "expand a graph to its scalar twin");
  flattenCmd->add_option("input", flattenIn, "graph file")->required();
  flattenCmd->add_option("-o,--output", flattenOut, "scalar graph output file (default stdout)");
  flattenCmd->add_option("--cap", flattenCap, "scalar size cap (0: default)");

  // oracle
  auto* oracleCmd = app.add_subcommand("oracle", "ground-truth checks");
  oracleCmd->require_subcommand(1);
  std::string hkIn;
  uint64_t hkCap = 0;
  auto* hkCmd = oracleCmd->add_subcommand("hk", "maximum matching of the flattened graph");
  hkCmd->add_option("input", hkIn, "graph file")->required();
  hkCmd->add_option("--cap", hkCap, "scalar size cap (0: default)");

  std::string omegaIn, omegaWitnessOut;
  uint64_t omegaCap = 0;
  bool omegaUseCurrent = false;
  auto* omegaCmd =
      oracleCmd->add_subcommand("omega", "exhaustive minimum of the matched-arc metric");
  omegaCmd->add_option("input", omegaIn, "graph file")->required();
  omegaCmd->add_option("--cap", omegaCap, "scalar equation cap (0: default 24)");
  omegaCmd->add_flag("--use-current", omegaUseCurrent,
                     "seed the search with the graph's own complete matching");
  omegaCmd->add_option("--witness", omegaWitnessOut, "write the optimal matching here");

  // report
  std::string reportIn, reportFormat = "text";
  auto* reportCmd = app.add_subcommand("report", "render a stored run report");
  reportCmd->add_option("input", reportIn, "report JSON file")->required();
  reportCmd->add_option("--format", reportFormat, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  if (genWireCmd->parsed()) {
    aam_graph* graph = nullptr;
    check(aam_gen_wire(wireN, &graph));
    GraphPtr guard(graph);
    char* json = nullptr;
    check(aam_graph_to_json(graph, &json));
    StringPtr jsonGuard(json);
    emit(json, genOut);
    return kExitOk;
  }

  if (genRandomCmd->parsed()) {
    aam_graph* graph = nullptr;
    check(aam_gen_random(rndSeed, rndEq, rndVar, rndSize, rndDensity, &graph));
    GraphPtr guard(graph);
    char* json = nullptr;
    check(aam_graph_to_json(graph, &json));
    StringPtr jsonGuard(json);
    emit(json, rndOut);
    return kExitOk;
  }

  if (genSatCmd->parsed()) {
    std::string clauses = readFile(satClausesPath);
    aam_graph* graph = nullptr;
    char* mapJson = nullptr;
    check(aam_gen_max2sat(clauses.c_str(), &graph, &mapJson));
    GraphPtr guard(graph);
    StringPtr mapGuard(mapJson);
    char* graphJson = nullptr;
    check(aam_graph_to_json(graph, &graphJson));
    StringPtr graphGuard(graphJson);
    emit(graphJson, satOut);
    if (!satMapOut.empty())
      writeFile(satMapOut, mapJson);
    OrderedJson map = OrderedJson::parse(mapJson);
    if (!map.at("renames").empty())
      std::cerr << "note: renamed complement literals: " << map.at("renames").dump() << "\n";
    return kExitOk;
  }

  if (matchCmd->parsed()) {
    GraphPtr graph = loadGraph(matchIn);
    aam_match_options options{};
    options.run_simplify = noSimplify ? 0 : 1;
    options.run_match = simplifyOnly ? 0 : 1;
    options.max_iterations = maxIterations;
    options.include_timings = withTimings ? 1 : 0;
    options.with_oracle = withOracle ? 1 : 0;
    char* reportJson = nullptr;
    check(aam_run_match(graph.get(), &options, &reportJson));
    StringPtr reportGuard(reportJson);
    if (!matchOut.empty())
      writeGraph(graph.get(), matchOut);
    OrderedJson report = OrderedJson::parse(reportJson);
    emit(matchFormat == "json" ? std::string(reportJson) : reportText(report), matchReportPath);
    return report.at("complete").get<bool>() ? kExitOk : kExitIncomplete;
  }

  if (flattenCmd->parsed()) {
    GraphPtr graph = loadGraph(flattenIn);
    char* json = nullptr;
    check(aam_flatten_json(graph.get(), flattenCap, &json));
    StringPtr guard(json);
    emit(json, flattenOut);
    return kExitOk;
  }

  if (hkCmd->parsed()) {
    GraphPtr graph = loadGraph(hkIn);
    char* json = nullptr;
    check(aam_oracle_hk_json(graph.get(), hkCap, &json));
    StringPtr guard(json);
    std::cout << json;
    return kExitOk;
  }

  if (omegaCmd->parsed()) {
    GraphPtr graph = loadGraph(omegaIn);
    char* json = nullptr;
    check(aam_oracle_omega_json(graph.get(), omegaCap, omegaUseCurrent ? 1 : 0, &json));
    StringPtr guard(json);
    OrderedJson result = OrderedJson::parse(json);
    if (!omegaWitnessOut.empty() && result.contains("witness"))
      writeFile(omegaWitnessOut, result.at("witness").dump(2) + "\n");
    result.erase("witness");
    std::cout << result.dump(2) << "\n";
    return kExitOk;
  }

  if (reportCmd->parsed()) {
    OrderedJson report = OrderedJson::parse(readFile(reportIn), nullptr, false);
    if (report.is_discarded())
      fail("'" + reportIn + "' is not valid JSON");
    std::cout << (reportFormat == "json" ? report.dump(2) + "\n" : reportText(report));
    return kExitOk;
  }

  return kExitError;
}
