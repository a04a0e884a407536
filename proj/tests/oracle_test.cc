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
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "ssmatch/edge_stream.h"
#include "ssmatch/matching.h"
#include "test_util.h"

namespace ssmatch {
namespace {

using ::ssmatch::testing::MakeGraph;

Matching MatchingOf(int32_t n,
                    std::vector<std::pair<Vertex, Vertex>> pairs) {
  return Matching::FromPairs(n, pairs);
}

Matching Greedy(const Graph& graph) {
  EdgeStream stream = EdgeStream::FromGraph(graph);
  return GreedyMaximalMatching(stream);
}

TEST(ExhaustiveOracleTest, KnownFamilies) {
  for (int64_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(MaxMatchingExhaustive(BuildGraph(GraphSpec::Path(n))), n / 2);
    EXPECT_EQ(MaxMatchingExhaustive(BuildGraph(GraphSpec::Complete(n))), n / 2);
  }
  for (int64_t n = 3; n <= 15; ++n) {
    EXPECT_EQ(MaxMatchingExhaustive(BuildGraph(GraphSpec::Cycle(n))), n / 2);
  }
  EXPECT_EQ(MaxMatchingExhaustive(BuildGraph(GraphSpec::Petersen())), 5);
  EXPECT_EQ(MaxMatchingExhaustive(Graph{0, {}}), 0);
  EXPECT_EQ(MaxMatchingExhaustive(Graph{5, {}}), 0);
  // Star: one edge at most.
  EXPECT_EQ(MaxMatchingExhaustive(MakeGraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})),
            1);
  // Two triangles joined by a bridge.
  EXPECT_EQ(MaxMatchingExhaustive(MakeGraph(
                6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}})),
            3);
}

TEST(RankOracleTest, AgreesWithExhaustiveOnSmallGraphs) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    const int64_t n = 2 + static_cast<int64_t>(seed % 11);
    const int64_t m = std::min(n * (n - 1) / 2, static_cast<int64_t>(seed % 17));
    const Graph g = BuildGraph(GraphSpec::Gnm(n, m, seed));
    EXPECT_EQ(MaxMatchingRank(g), MaxMatchingExhaustive(g)) << "seed " << seed;
  }
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = BuildGraph(GraphSpec::Bipartite(6, 7, 15, seed));
    EXPECT_EQ(MaxMatchingRank(g), MaxMatchingExhaustive(g)) << "seed " << seed;
  }
  EXPECT_EQ(MaxMatchingRank(BuildGraph(GraphSpec::Petersen())), 5);
}

TEST(RankOracleTest, LargerKnownFamilies) {
  EXPECT_EQ(MaxMatchingRank(BuildGraph(GraphSpec::Path(101))), 50);
  EXPECT_EQ(MaxMatchingRank(BuildGraph(GraphSpec::Cycle(60))), 30);
  EXPECT_EQ(MaxMatchingRank(BuildGraph(GraphSpec::Complete(31))), 15);
}

TEST(OracleLimitsTest, RejectsGraphsBeyondLimits) {
  const Graph big = BuildGraph(GraphSpec::Path(kExhaustiveLimit + 1));
  EXPECT_THROW(MaxMatchingExhaustive(big), std::invalid_argument);
  const Graph medium = BuildGraph(GraphSpec::Path(kEnumerationLimit + 1));
  EXPECT_THROW(EnumerateShortAugmentingPaths(medium, Matching(medium.n), 1),
               std::invalid_argument);
  EXPECT_EQ(ReferenceMatchingSize(big), (kExhaustiveLimit + 1) / 2);
  EXPECT_EQ(ReferenceMatchingSize(Graph{kRankLimit + 1, {}}), -1);
}

// All simple paths by brute force, kept when they are augmenting.
std::set<std::vector<Vertex>> NaiveShortPaths(const Graph& g, const Matching& m,
                                              int32_t max_matched) {
  const auto adj = g.Adjacency();
  std::set<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  std::vector<bool> on(static_cast<size_t>(g.n), false);
  auto dfs = [&](auto&& self) -> void {
    const Vertex x = path.back();
    if (path.size() >= 2 && m.IsFree(x)) {
      bool alternating = true;
      int32_t matched = 0;
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        const bool is_matched = m.IsMatched(Arc{path[i], path[i + 1]});
        alternating &= is_matched == (i % 2 == 1);
        matched += is_matched ? 1 : 0;
      }
      if (alternating && matched <= max_matched && path.front() < x) {
        out.insert(path);
      }
    }
    for (Vertex y : adj[x]) {
      if (on[y]) continue;
      on[y] = true;
      path.push_back(y);
      self(self);
      path.pop_back();
      on[y] = false;
    }
  };
  for (Vertex a = 0; a < g.n; ++a) {
    if (!m.IsFree(a)) continue;
    path = {a};
    on[a] = true;
    dfs(dfs);
    on[a] = false;
  }
  return out;
}

TEST(PathEnumerationTest, AgreesWithBruteForce) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    const int64_t n = 3 + static_cast<int64_t>(seed % 6);
    const int64_t m = std::min(n * (n - 1) / 2, 2 + static_cast<int64_t>(seed % 13));
    const Graph g = BuildGraph(GraphSpec::Gnm(n, m, seed));
    // Greedy then one perturbation so that augmenting paths exist.
    Matching matching = Greedy(g);
    if (matching.size() > 0) {
      const auto edges = matching.Edges();
      std::vector<std::pair<Vertex, Vertex>> keep;
      for (size_t i = 1; i < edges.size(); ++i) keep.push_back({edges[i].u, edges[i].v});
      matching = Matching::FromPairs(g.n, keep);
    }
    for (int32_t k : {0, 1, 2, 3}) {
      const auto got = EnumerateShortAugmentingPaths(g, matching, k);
      const std::set<std::vector<Vertex>> got_set(got.begin(), got.end());
      EXPECT_EQ(got.size(), got_set.size()) << "duplicates, seed " << seed;
      EXPECT_EQ(got_set, NaiveShortPaths(g, matching, k)) << "seed " << seed;
    }
  }
}

TEST(PathEnumerationTest, HonoursRemovedVertices) {
  const Graph g = MakeGraph(4, {{1, 2}, {0, 1}, {2, 3}});
  const Matching m = MatchingOf(4, {{1, 2}});
  EXPECT_EQ(EnumerateShortAugmentingPaths(g, m, 1).size(), 1u);
  EXPECT_TRUE(EnumerateShortAugmentingPaths(g, m, 0).empty());
  const std::vector<uint8_t> removed = {0, 0, 0, 1};
  EXPECT_TRUE(EnumerateShortAugmentingPaths(g, m, 1, removed).empty());
}

TEST(DisjointPathsTest, Examples) {
  // Two separate P4s with matched middles.
  const Graph two = MakeGraph(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});
  const Matching m2 = MatchingOf(8, {{1, 2}, {5, 6}});
  EXPECT_EQ(MaxDisjointShortPaths(two, m2, 1), 2);
  EXPECT_EQ(MaxDisjointShortPaths(two, m2, 0), 0);
  // Free vertices 0 and 3 compete for the single free 4: only one path.
  const Graph shared = MakeGraph(5, {{0, 1}, {1, 2}, {2, 4}, {3, 4}});
  const Matching ms = MatchingOf(5, {{1, 2}});
  EXPECT_EQ(MaxDisjointShortPaths(shared, ms, 1), 1);
  // Empty matching: disjoint free edges.
  EXPECT_EQ(MaxDisjointShortPaths(BuildGraph(GraphSpec::Path(7)), Matching(7), 0),
            3);
}

TEST(DisjointPathsTest, BoundedByMatchingDeficit) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const Graph g = BuildGraph(GraphSpec::Gnm(10, 14, seed));
    const Matching m = Greedy(g);
    const int64_t deficit = MaxMatchingExhaustive(g) - m.size();
    const int64_t k = MaxDisjointShortPaths(g, m, 4);
    EXPECT_LE(k, deficit) << "seed " << seed;
    EXPECT_GE(k, 0);
  }
}

}  // namespace
}  // namespace ssmatch
