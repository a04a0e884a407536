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

// Top level: greedy bootstrap, then scales h = 1/2, 1/4, ..., eps^2/64, each
// running a fixed number of phases and applying the paths each phase finds.

#ifndef SSMATCH_SCALE_DRIVER_H_
#define SSMATCH_SCALE_DRIVER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssmatch/edge_stream.h"
#include "ssmatch/matching.h"
#include "ssmatch/phase_engine.h"

namespace ssmatch {

struct EpsilonChoice {
  std::string requested_text;
  double requested = 0;
  int64_t eps_inv = 0;  // effective eps is 1/eps_inv

  double effective() const { return 1.0 / static_cast<double>(eps_inv); }
};

// Accepts "0.25", "1/4", "1" and the like. The value is rounded down to the
// nearest 1/2^k. Throws std::invalid_argument unless 0 < eps <= 1.
EpsilonChoice ParseEpsilon(std::string_view text);

// 1/h for every scale, starting at 2 and ending at 64 / eps^2.
std::vector<int64_t> ScaleSchedule(int64_t eps_inv);

// 1 + sum over scales of reads_per_bundle * phases * bundles. Throws
// std::overflow_error if the value does not fit.
int64_t ExpectedPassCount(int64_t eps_inv,
                          int64_t reads_per_bundle = kReadsPerBundle);

struct RunConfig {
  int64_t eps_inv = 2;
  // Skip provably repeated work: quiescent bundles and phases that would
  // replay the last executed one. The charged pass count is unaffected.
  bool elide_repeats = true;
  // Leave a scale after its first phase without augmentations. Breaks the
  // pass-count identity; off unless asked for.
  bool early_exit_when_no_augmentation = false;
  Fault fault = Fault::kNone;
  // Stop after this many scales; 0 runs the whole schedule. Truncated runs
  // do not meet the pass-count identity and exist for tests.
  int64_t scale_limit = 0;
};

struct ScaleReport {
  int64_t h_inv = 0;
  int64_t phases = 0;           // phases charged
  int64_t executed_phases = 0;  // phases actually simulated
  int64_t augmentations = 0;
  int64_t final_size = 0;
  int64_t passes = 0;
};

struct RunReport {
  int32_t n = 0;
  int64_t m = 0;
  int64_t eps_inv = 0;
  int64_t greedy_size = 0;
  Matching matching;
  int64_t passes = 0;
  int64_t expected_passes = 0;
  std::vector<ScaleReport> per_scale;
  PhaseStats totals;
  int64_t max_structure_size = 0;
};

RunReport Run(EdgeStream& stream, const RunConfig& config,
              std::span<PhaseMonitor* const> monitors = {});

}  // namespace ssmatch

#endif  // SSMATCH_SCALE_DRIVER_H_
