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

// Ground truth that shares no code with the streaming algorithm.

#ifndef SSMATCH_ORACLE_H_
#define SSMATCH_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ssmatch/matching.h"
#include "ssmatch/types.h"

namespace ssmatch {

inline constexpr int32_t kExhaustiveLimit = 22;
inline constexpr int32_t kRankLimit = 2000;
inline constexpr int32_t kEnumerationLimit = 16;

// Maximum matching size by dynamic programming over vertex subsets.
// Throws std::invalid_argument for n > kExhaustiveLimit.
int64_t MaxMatchingExhaustive(const Graph& graph);

// Maximum matching size as half the rank of a random Tutte matrix over
// GF(2^61 - 1), maximized over `trials` samples. Never over-reports.
// Throws std::invalid_argument for n > kRankLimit.
int64_t MaxMatchingRank(const Graph& graph, int trials = 3,
                        uint64_t seed = 0x5eed);

// Every simple M-augmenting path with at most `max_matched` matched edges and
// no vertex flagged in `removed` (may be empty). Each path is reported once,
// oriented from the smaller endpoint. Throws for n > kEnumerationLimit.
std::vector<std::vector<Vertex>> EnumerateShortAugmentingPaths(
    const Graph& graph, const Matching& matching, int32_t max_matched,
    std::span<const uint8_t> removed = {});

// Largest number of pairwise vertex-disjoint paths among those above.
int64_t MaxDisjointShortPaths(const Graph& graph, const Matching& matching,
                              int32_t max_matched);

// Size of the exact maximum matching by whichever oracle applies, or -1.
int64_t ReferenceMatchingSize(const Graph& graph);

}  // namespace ssmatch

#endif  // SSMATCH_ORACLE_H_
