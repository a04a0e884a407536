// Copyright 2026 The ssmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ssmatch: run, verify, trace and benchmark the multi-pass streaming matcher.
//
// Exit status: 0 ok, 1 usage or I/O error, 2 approximation guarantee missed,
// 3 invariant violation, 4 pass count differs from the closed form.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssmatch/edge_stream.h"
#include "ssmatch/invariant_checker.h"
#include "ssmatch/oracle.h"
#include "ssmatch/report.h"
#include "ssmatch/scale_driver.h"
#include "ssmatch/trace.h"

namespace {

using namespace ssmatch;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuarantee = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitPassCount = 4;

struct Options {
  std::string input;
  std::string gen;
  std::string epsilon = "1/2";
  std::string out;
  std::string trace;
  bool check_invariants = false;
  std::string oracle = "none";
  std::optional<uint64_t> seed;
  bool literal = false;
  bool early_exit = false;
  std::string fault = "none";
  std::vector<std::string> bench_gens;
  bool json = false;
};

GraphSpec ResolveSpec(const Options& o) {
  if (o.input.empty() == o.gen.empty()) {
    throw CLI::ValidationError("exactly one of --input and --gen is required");
  }
  GraphSpec spec = o.input.empty() ? ParseGraphSpec(o.gen)
                                   : GraphSpec::File(o.input);
  if (o.seed) spec.seed = *o.seed;
  return spec;
}

Fault ParseFault(const std::string& name) {
  if (name == "none") return Fault::kNone;
  if (name == "corrupt-labels") return Fault::kCorruptLabels;
  if (name == "skip-augment-scan") return Fault::kSkipAugmentScan;
  if (name == "drop-augmentations") return Fault::kDropAugmentations;
  throw CLI::ValidationError("--inject-fault", "unknown fault " + name);
}

OracleOutcome RunOracle(const std::string& mode, const Graph& graph,
                        int64_t size, int64_t eps_inv, uint64_t seed) {
  OracleOutcome outcome;
  outcome.mode = mode;
  if (mode == "none") return outcome;
  outcome.nu = mode == "exhaustive" ? MaxMatchingExhaustive(graph)
                                    : MaxMatchingRank(graph, 3, seed);
  outcome.guarantee_met = MeetsGuarantee(size, outcome.nu, eps_inv);
  return outcome;
}

// Runs the matcher as configured and prints the JSON report. Returns the
// process exit status.
int DoRun(const Options& o, bool verify) {
  const GraphSpec spec = ResolveSpec(o);
  const EpsilonChoice eps = ParseEpsilon(o.epsilon);
  EdgeStream stream = OpenStream(spec);
  const bool checked = verify || o.check_invariants;
  std::string oracle_mode = o.oracle;
  if (verify && oracle_mode == "none") {
    oracle_mode = stream.vertex_count() <= kExhaustiveLimit ? "exhaustive"
                                                            : "tutte";
  }
  const Graph graph =
      checked || oracle_mode != "none" ? stream.Materialize() : Graph{};
  const uint64_t seed = o.seed.value_or(0x5eed);

  CheckerOptions checker_options;
  if (oracle_mode != "none" && graph.n <= kExhaustiveLimit) {
    checker_options.reference_size = MaxMatchingExhaustive(graph);
  }
  std::unique_ptr<InvariantChecker> checker;
  std::vector<PhaseMonitor*> monitors;
  if (checked) {
    checker = std::make_unique<InvariantChecker>(graph, checker_options);
    monitors.push_back(checker.get());
  }
  std::ofstream trace_file;
  std::unique_ptr<JsonlTraceWriter> writer;
  if (!o.trace.empty()) {
    trace_file.open(o.trace, std::ios::binary);
    if (!trace_file) throw std::runtime_error("cannot write " + o.trace);
    writer = std::make_unique<JsonlTraceWriter>(trace_file);
    monitors.push_back(writer.get());
  }

  RunConfig config;
  config.eps_inv = eps.eps_inv;
  config.elide_repeats = !o.literal;
  config.early_exit_when_no_augmentation = o.early_exit;
  config.fault = ParseFault(o.fault);

  std::vector<Violation> violations;
  RunReport report;
  bool crashed = false;
  try {
    report = Run(stream, config, monitors);
  } catch (const AlgorithmError& e) {
    crashed = true;
    violations.push_back({"internal-consistency", 0, kNone, e.what()});
  }
  if (checker) {
    violations.insert(violations.begin(), checker->violations().begin(),
                      checker->violations().end());
  }
  if (crashed) {
    nlohmann::ordered_json j;
    j["error"] = "run aborted";
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const Violation& v : violations) {
      list.push_back({{"invariant", v.invariant}, {"witness", v.witness}});
    }
    j["invariant_violations"] = list;
    std::cout << j.dump(2) << '\n';
    return kExitInvariant;
  }

  const OracleOutcome oracle = RunOracle(
      oracle_mode, graph, report.matching.size(), eps.eps_inv, seed);
  std::cout << ReportToJson(report, eps, violations, oracle).dump(2) << '\n';
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    WriteMatching(report.matching, out);
  }

  if (checked && !ValidateMatching(report.matching, graph)) {
    std::cerr << "output is not a matching of the input\n";
    return kExitGuarantee;
  }
  if (checker && !checker->ok()) {
    std::cerr << "invariant violated: " << checker->violations()[0].invariant
              << '\n';
    return kExitInvariant;
  }
  if (!oracle.guarantee_met) {
    std::cerr << "approximation guarantee missed: |M| = "
              << report.matching.size() << ", nu = " << oracle.nu << '\n';
    return kExitGuarantee;
  }
  if (verify && report.passes != report.expected_passes) {
    std::cerr << "pass count " << report.passes << " differs from "
              << report.expected_passes << '\n';
    return kExitPassCount;
  }
  return kExitOk;
}

int DoGen(const Options& o) {
  const Graph graph = BuildGraph(ResolveSpec(o));
  if (o.out.empty()) {
    std::cout << FormatEdgeList(graph);
  } else {
    WriteEdgeList(graph, o.out);
  }
  return kExitOk;
}

int DoTrace(const Options& o) {
  if (o.out.empty()) throw CLI::ValidationError("trace needs --out");
  Options run = o;
  run.trace = o.out;
  run.out.clear();
  const GraphSpec spec = ResolveSpec(run);
  const EpsilonChoice eps = ParseEpsilon(run.epsilon);
  EdgeStream stream = OpenStream(spec);
  std::ofstream file(run.trace, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + run.trace);
  JsonlTraceWriter writer(file);
  std::vector<PhaseMonitor*> monitors{&writer};
  RunConfig config;
  config.eps_inv = eps.eps_inv;
  const RunReport report = Run(stream, config, monitors);
  std::cout << writer.records() << " records, matching size "
            << report.matching.size() << '\n';
  return kExitOk;
}

int DoBench(const Options& o) {
  std::vector<std::string> gens = o.bench_gens;
  if (gens.empty()) {
    gens = {"path:50", "cycle:51", "complete:12", "petersen",
            "gnm:40,120,seed=1", "gnm:60,300,seed=2",
            "bipartite:20,20,80,seed=3"};
  }
  const EpsilonChoice eps = ParseEpsilon(o.epsilon);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (!o.json) {
    std::cout << std::left << std::setw(28) << "graph" << std::right
              << std::setw(6) << "n" << std::setw(7) << "m" << std::setw(7)
              << "|M|" << std::setw(7) << "nu" << std::setw(8) << "ratio"
              << std::setw(16) << "passes" << std::setw(9) << "phases"
              << std::setw(10) << "ms" << '\n';
  }
  for (const std::string& g : gens) {
    GraphSpec spec = ParseGraphSpec(g);
    if (o.seed) spec.seed = *o.seed;
    EdgeStream stream = OpenStream(spec);
    const Graph graph = stream.Materialize();
    RunConfig config;
    config.eps_inv = eps.eps_inv;
    const auto start = std::chrono::steady_clock::now();
    const RunReport report = Run(stream, config);
    const auto ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    const int64_t nu = ReferenceMatchingSize(graph);
    int64_t executed = 0;
    for (const auto& s : report.per_scale) executed += s.executed_phases;
    const double ratio =
        report.matching.size() > 0
            ? static_cast<double>(nu) / static_cast<double>(report.matching.size())
            : 1.0;
    if (o.json) {
      rows.push_back({{"graph", spec.ToString()},
                      {"n", report.n},
                      {"m", report.m},
                      {"matching_size", report.matching.size()},
                      {"nu", nu},
                      {"passes", report.passes},
                      {"executed_phases", executed},
                      {"ms", ms}});
    } else {
      std::cout << std::left << std::setw(28) << spec.ToString() << std::right
                << std::setw(6) << report.n << std::setw(7) << report.m
                << std::setw(7) << report.matching.size() << std::setw(7) << nu
                << std::setw(8) << std::fixed << std::setprecision(3) << ratio
                << std::setw(16) << report.passes << std::setw(9) << executed
                << std::setw(10) << std::setprecision(1) << ms << '\n';
    }
  }
  if (o.json) std::cout << rows.dump(2) << '\n';
  return kExitOk;
}

void AddInputOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "edge-list file");
  cmd->add_option("--gen", o.gen,
                  "generator spec, e.g. path:4 or gnm:100,300,seed=7");
  cmd->add_option("--seed", o.seed, "seed for random generators and oracle");
}

void AddRunOptions(CLI::App* cmd, Options& o) {
  AddInputOptions(cmd, o);
  cmd->add_option("--epsilon", o.epsilon,
                  "approximation parameter, e.g. 0.5 or 1/4");
  cmd->add_option("--out", o.out, "write the matching as 'u v' lines");
  cmd->add_option("--trace", o.trace, "write JSONL engine events");
  cmd->add_flag("--check-invariants", o.check_invariants,
                "verify structural invariants during the run");
  cmd->add_option("--oracle", o.oracle, "exact reference for the guarantee")
      ->check(CLI::IsMember({"none", "exhaustive", "tutte"}));
  cmd->add_flag("--literal", o.literal,
                "simulate every pass-bundle instead of skipping repeats");
  cmd->add_flag("--early-exit-when-no-augmentation", o.early_exit,
                "leave a scale after a phase without augmentations");
  cmd->add_option("--inject-fault", o.fault, "testing only")
      ->check(CLI::IsMember({"none", "corrupt-labels", "skip-augment-scan",
                                 "drop-augmentations"}))
      ->group("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pass streaming (1+eps)-approximate maximum matching"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "compute a matching, print a report");
  AddRunOptions(run, o);
  auto* verify = app.add_subcommand(
      "verify", "run with invariant checks and an oracle; exit status tells");
  AddRunOptions(verify, o);
  auto* gen = app.add_subcommand("gen", "write a generated edge list");
  AddInputOptions(gen, o);
  gen->add_option("--out", o.out, "destination file (default stdout)");
  auto* trace = app.add_subcommand("trace", "write the JSONL event trace");
  AddInputOptions(trace, o);
  trace->add_option("--epsilon", o.epsilon, "approximation parameter");
  trace->add_option("--out", o.out, "trace destination")->required();
  auto* bench = app.add_subcommand("bench", "timing and quality table");
  bench->add_option("--gen", o.bench_gens, "generator specs (repeatable)");
  bench->add_option("--epsilon", o.epsilon, "approximation parameter");
  bench->add_option("--seed", o.seed, "override generator seeds");
  bench->add_flag("--json", o.json, "emit JSON rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return DoRun(o, false);
    if (*verify) return DoRun(o, true);
    if (*gen) return DoGen(o);
    if (*trace) return DoTrace(o);
    if (*bench) return DoBench(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
