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

// One phase of the parallel-DFS search: a fixed number of pass-bundles, each
// consisting of marking, Extend-Active-Path (one pass), Contract-and-Augment
// (two passes) and Backtrack-Stuck-Structures (no pass).

#ifndef SSMATCH_PHASE_ENGINE_H_
#define SSMATCH_PHASE_ENGINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssmatch/blossom_forest.h"
#include "ssmatch/edge_stream.h"
#include "ssmatch/matching.h"

namespace ssmatch {

inline constexpr int64_t kReadsPerBundle = 3;

// Integer parameters of one scale. eps_inv = 1/eps and h_inv = 1/h are
// powers of two.
struct ScaleParams {
  int64_t eps_inv = 0;
  int64_t h_inv = 0;
  int32_t max_label = 0;     // 3/eps
  int64_t size_limit = 0;    // 6/h + 1
  int64_t bundles = 0;       // pass-bundles per phase, 72/(h eps)
  int64_t phases = 0;        // phases per scale, 144/(h eps)
  int64_t space_bound = 0;   // 36/(h eps)
};

// Throws std::invalid_argument unless both arguments are powers of two with
// h_inv >= 2.
ScaleParams MakeScaleParams(int64_t h_inv, int64_t eps_inv);

// Deliberate defects for exercising the checkers. Never set outside tests.
enum class Fault {
  kNone,
  kCorruptLabels,     // overtakes at depth >= 2 store label 0
  kSkipAugmentScan,   // Contract-and-Augment Step 2 reads but never augments
  kDropAugmentations, // paths are found and their structures removed, but
                      // none is returned
};

struct PhaseConfig {
  ScaleParams params;
  // Global index of this phase's first pass-bundle, for trace records.
  int64_t first_bundle = 1;
  // Once a bundle changes nothing, every later bundle of the phase would
  // replay it. With this set the engine charges their passes without reading.
  bool skip_quiescent = true;
  Fault fault = Fault::kNone;
};

struct PhaseStats {
  int64_t overtakes = 0;
  int64_t contracts = 0;
  int64_t augments = 0;
  int64_t backtracks = 0;
  int64_t holds = 0;
  int64_t label_reductions = 0;
};

struct PhaseResult {
  // Vertex-disjoint augmenting paths w.r.t. the phase's starting matching,
  // each from alpha to beta.
  std::vector<std::vector<Vertex>> paths;
  PhaseStats stats;
  int64_t stream_reads = 0;     // passes charged, credited ones included
  int64_t executed_bundles = 0;
  int64_t quiesced_at = 0;      // first bundle that changed nothing, or 0
  bool had_holds = false;       // some structure was on hold at some point
  int64_t active_at_end = 0;
  int64_t max_structure_size = 0;
};

// One engine event. Fields that do not apply are null in the trace.
struct TraceEvent {
  int64_t bundle = 0;
  std::string op;          // overtake, contract, augment, backtrack, hold
  Vertex structure = kNone;  // the free vertex alpha of the acting structure
  Arc arc;
  int32_t label_old = kNone;
  int32_t label_new = kNone;
  std::string tag;         // the "case" field
};

struct PhaseContext {
  const ScaleParams* params = nullptr;
  const Matching* matching = nullptr;  // matching at phase start
  int64_t first_bundle = 0;
};

// Observer hooks. Monitors must not mutate the forest.
class PhaseMonitor {
 public:
  virtual ~PhaseMonitor() = default;
  virtual void OnPhaseStart(const StructureForest& /*forest*/,
                            const PhaseContext& /*context*/) {}
  virtual void OnBundleStart(const StructureForest& /*forest*/,
                             int64_t /*bundle*/) {}
  virtual void OnEvent(const TraceEvent& /*event*/) {}
  // After every overtake, contract and augment. `touched` lists structure
  // indices.
  virtual void AfterOperation(const StructureForest& /*forest*/,
                              std::span<const int32_t> /*touched*/) {}
  virtual void OnPhaseEnd(const StructureForest& /*forest*/,
                          const PhaseResult& /*result*/) {}
  // After the last phase of a scale, with the matching it produced.
  virtual void OnScaleEnd(const ScaleParams& /*params*/,
                          const Matching& /*matching*/) {}
};

PhaseResult RunPhase(EdgeStream& stream, const Matching& matching,
                     const PhaseConfig& config,
                     std::span<PhaseMonitor* const> monitors = {});

}  // namespace ssmatch

#endif  // SSMATCH_PHASE_ENGINE_H_
