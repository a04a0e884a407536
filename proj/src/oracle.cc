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

#include "ssmatch/oracle.h"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace ssmatch {
namespace {

constexpr uint64_t kPrime = (uint64_t{1} << 61) - 1;

uint64_t MulMod(uint64_t a, uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(p & kPrime);
  uint64_t hi = static_cast<uint64_t>(p >> 61);
  uint64_t r = lo + hi;
  if (r >= kPrime) r -= kPrime;
  return r;
}

uint64_t PowMod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = MulMod(r, a);
    a = MulMod(a, a);
    e >>= 1;
  }
  return r;
}

int64_t RankModP(std::vector<std::vector<uint64_t>>& a) {
  const size_t n = a.size();
  int64_t rank = 0;
  for (size_t col = 0; col < n && rank < static_cast<int64_t>(n); ++col) {
    size_t pivot = static_cast<size_t>(rank);
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[static_cast<size_t>(rank)]);
    auto& row = a[static_cast<size_t>(rank)];
    const uint64_t inv = PowMod(row[col], kPrime - 2);
    for (size_t r = static_cast<size_t>(rank) + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const uint64_t f = MulMod(a[r][col], inv);
      for (size_t c = col; c < n; ++c) {
        a[r][c] = (a[r][c] + kPrime - MulMod(f, row[c])) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

void RequireAtMost(const Graph& graph, int32_t limit, const char* what) {
  if (graph.n > limit) {
    throw std::invalid_argument(std::string(what) + " supports n <= " +
                                std::to_string(limit));
  }
}

}  // namespace

int64_t MaxMatchingExhaustive(const Graph& graph) {
  RequireAtMost(graph, kExhaustiveLimit, "exhaustive oracle");
  const int32_t n = graph.n;
  std::vector<uint32_t> adj(static_cast<size_t>(n), 0);
  for (const Edge& e : graph.edges) {
    adj[e.u] |= uint32_t{1} << e.v;
    adj[e.v] |= uint32_t{1} << e.u;
  }
  // best[mask] = maximum matching of the subgraph induced by mask.
  std::vector<uint8_t> best(size_t{1} << n, 0);
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    const int v = std::countr_zero(mask);
    const uint32_t rest = mask & (mask - 1);
    uint8_t value = best[rest];
    for (uint32_t nb = adj[v] & rest; nb != 0; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      value = std::max<uint8_t>(value, 1 + best[rest & ~(uint32_t{1} << w)]);
    }
    best[mask] = value;
  }
  return best.back();
}

int64_t MaxMatchingRank(const Graph& graph, int trials, uint64_t seed) {
  RequireAtMost(graph, kRankLimit, "rank oracle");
  const auto n = static_cast<size_t>(graph.n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> draw(1, kPrime - 1);
  int64_t best = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<uint64_t>> tutte(n, std::vector<uint64_t>(n, 0));
    for (const Edge& e : graph.edges) {
      const uint64_t x = draw(rng);
      tutte[e.u][e.v] = x;
      tutte[e.v][e.u] = kPrime - x;
    }
    best = std::max(best, RankModP(tutte) / 2);
  }
  return best;
}

std::vector<std::vector<Vertex>> EnumerateShortAugmentingPaths(
    const Graph& graph, const Matching& matching, int32_t max_matched,
    std::span<const uint8_t> removed) {
  RequireAtMost(graph, kEnumerationLimit, "path enumeration");
  const auto adj = graph.Adjacency();
  auto is_removed = [&](Vertex v) {
    return !removed.empty() && removed[v] != 0;
  };
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  std::vector<uint8_t> on_path(static_cast<size_t>(graph.n), 0);

  // `path` ends at a vertex from which the next edge must be unmatched.
  auto extend = [&](auto&& self, int32_t matched) -> void {
    const Vertex x = path.back();
    for (Vertex y : adj[x]) {
      if (on_path[y] || is_removed(y)) continue;
      if (matching.IsFree(y)) {
        if (y > path.front()) {
          out.push_back(path);
          out.back().push_back(y);
        }
        continue;
      }
      const Vertex z = matching.mate(y);
      if (matched == max_matched || on_path[z] || is_removed(z)) continue;
      path.push_back(y);
      path.push_back(z);
      on_path[y] = on_path[z] = 1;
      self(self, matched + 1);
      on_path[y] = on_path[z] = 0;
      path.pop_back();
      path.pop_back();
    }
  };
  for (Vertex alpha = 0; alpha < graph.n; ++alpha) {
    if (!matching.IsFree(alpha) || is_removed(alpha)) continue;
    path.assign(1, alpha);
    on_path[alpha] = 1;
    extend(extend, 0);
    on_path[alpha] = 0;
  }
  return out;
}

int64_t MaxDisjointShortPaths(const Graph& graph, const Matching& matching,
                              int32_t max_matched) {
  const auto paths =
      EnumerateShortAugmentingPaths(graph, matching, max_matched);
  std::vector<uint32_t> masks;
  for (const auto& p : paths) {
    uint32_t m = 0;
    for (Vertex v : p) m |= uint32_t{1} << v;
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  // Branch on the lowest vertex still available: leave it unused, or take
  // one of the paths through it.
  std::unordered_map<uint32_t, int64_t> memo;
  auto solve = [&](auto&& self, uint32_t blocked) -> int64_t {
    uint32_t coverable = 0;
    for (uint32_t m : masks) {
      if ((m & blocked) == 0) coverable |= m;
    }
    if (coverable == 0) return 0;
    if (auto it = memo.find(blocked); it != memo.end()) return it->second;
    const uint32_t v = coverable & (~coverable + 1);
    int64_t best = self(self, blocked | v);
    for (uint32_t m : masks) {
      if ((m & blocked) == 0 && (m & v) != 0) {
        best = std::max(best, 1 + self(self, blocked | m));
      }
    }
    memo.emplace(blocked, best);
    return best;
  };
  return solve(solve, 0);
}

int64_t ReferenceMatchingSize(const Graph& graph) {
  if (graph.n <= kExhaustiveLimit) return MaxMatchingExhaustive(graph);
  if (graph.n <= kRankLimit) return MaxMatchingRank(graph);
  return -1;
}

}  // namespace ssmatch
