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

// Re-verifies the engine's structural claims from the outside while a run is
// in progress. It reads the forest through its public queries only and
// compares against a private copy of the input graph.
//
// Invariant names used in violations:
//   structure-disjointness  vertex sets of structures overlap or disagree
//   tree-representation     contracted G_alpha is not the stored tree
//   unique-arc              a tree edge has zero or several arcs in G_alpha
//   blossom-shape           malformed cycle, base or internal labels
//   increasing-labeling     labels do not increase away from the root
//   outer-independence      an arc joins two outer vertices at a boundary
//   structure-size          a structure exceeds limit_h * l_max vertices
//   space-vertices          a structure exceeds Delta_h vertices
//   space-arcs              a structure exceeds Delta_h^2 arcs
//   active-structures       more than h|M| active structures at phase end
//   label-reductions        an arc was relabeled more than l_max + 1 times
//   critical-path           a short augmenting path has no critical start/arc
//   augmenting-paths        phase output is not a set of disjoint paths
//   scale-guarantee         nu > (1 + 4 h l_max)(1 + 1/l_max)|M| after a scale

#ifndef SSMATCH_INVARIANT_CHECKER_H_
#define SSMATCH_INVARIANT_CHECKER_H_

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ssmatch/phase_engine.h"
#include "ssmatch/types.h"

namespace ssmatch {

struct Violation {
  std::string invariant;
  int64_t bundle = 0;
  Vertex structure = kNone;  // alpha, when one structure is at fault
  std::string witness;
};

struct CheckerOptions {
  // Re-check touched structures after every operation, not only at
  // pass-bundle boundaries.
  bool after_each_operation = true;
  // Short-path criticality is checked when n is at most this.
  int32_t critical_path_max_n = 14;
  // nu(G) if known; enables the per-scale bound.
  int64_t reference_size = -1;
  size_t max_recorded = 64;
};

struct CheckCounters {
  int64_t structure_checks = 0;
  int64_t boundary_checks = 0;
  int64_t critical_path_checks = 0;  // paths times orientations examined
  int64_t phase_checks = 0;
  int64_t scale_checks = 0;
};

class InvariantChecker : public PhaseMonitor {
 public:
  explicit InvariantChecker(Graph graph, CheckerOptions options = {});

  void OnPhaseStart(const StructureForest& forest,
                    const PhaseContext& context) override;
  void OnBundleStart(const StructureForest& forest, int64_t bundle) override;
  void AfterOperation(const StructureForest& forest,
                      std::span<const int32_t> touched) override;
  void OnPhaseEnd(const StructureForest& forest,
                  const PhaseResult& result) override;
  void OnScaleEnd(const ScaleParams& params, const Matching& matching) override;

  bool ok() const { return total_ == 0; }
  int64_t violation_count() const { return total_; }
  // The first `max_recorded` violations.
  const std::vector<Violation>& violations() const { return recorded_; }
  const CheckCounters& counters() const { return counters_; }

  // Individual checks, public for direct use in tests.
  void CheckStructure(const StructureForest& forest, int32_t s);
  void CheckOuterIndependence(const StructureForest& forest);
  void CheckCriticalPaths(const StructureForest& forest);

 private:
  void Report(std::string invariant, Vertex structure, std::string witness);
  bool HasEdge(Vertex u, Vertex v) const;

  Graph graph_;
  CheckerOptions options_;
  std::unordered_set<int64_t> edge_keys_;
  ScaleParams params_;
  const Matching* phase_matching_ = nullptr;
  std::vector<std::vector<Vertex>> short_paths_;
  int64_t bundle_ = 0;
  int64_t total_ = 0;
  std::vector<Violation> recorded_;
  CheckCounters counters_;
};

// (1 + eps) * size >= nu with eps = 1/eps_inv, in exact arithmetic.
bool MeetsGuarantee(int64_t size, int64_t nu, int64_t eps_inv);

}  // namespace ssmatch

#endif  // SSMATCH_INVARIANT_CHECKER_H_
