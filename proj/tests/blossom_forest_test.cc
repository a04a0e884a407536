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

#include "ssmatch/blossom_forest.h"

#include <algorithm>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "ssmatch/invariant_checker.h"
#include "test_util.h"

namespace ssmatch {
namespace {

using ::ssmatch::testing::MakeGraph;

// Owns everything a forest points to, and re-checks every structure through
// the independent checker after each step.
class Fixture {
 public:
  Fixture(Graph graph, std::vector<std::pair<Vertex, Vertex>> matched,
          int64_t eps_inv = 2)
      : graph_(std::move(graph)),
        matching_(Matching::FromPairs(graph_.n, matched)),
        labels_(matching_, static_cast<int32_t>(3 * eps_inv)),
        removed_(graph_.n),
        forest_(matching_, labels_, removed_),
        checker_(graph_, CheckerOptions{.critical_path_max_n = 0}) {
    const ScaleParams params = MakeScaleParams(2, eps_inv);
    const PhaseContext context{&params, &matching_, 1};
    checker_.OnPhaseStart(forest_, context);
  }

  StructureForest& forest() { return forest_; }
  const Matching& matching() const { return matching_; }
  const Graph& graph() const { return graph_; }
  const RemovedSet& removed() const { return removed_; }

  int32_t Init(Vertex alpha) { return forest_.InitStructure(alpha); }

  void ExpectHealthy() {
    for (int32_t s = 0; s < forest_.structure_count(); ++s) {
      checker_.CheckStructure(forest_, s);
    }
    checker_.CheckOuterIndependence(forest_);
    for (const Violation& v : checker_.violations()) {
      ADD_FAILURE() << v.invariant << ": " << v.witness;
    }
  }

  void ExpectStructuresHealthy() {
    for (int32_t s = 0; s < forest_.structure_count(); ++s) {
      checker_.CheckStructure(forest_, s);
    }
    for (const Violation& v : checker_.violations()) {
      ADD_FAILURE() << v.invariant << ": " << v.witness;
    }
  }

 private:
  Graph graph_;
  Matching matching_;
  ArcLabelTable labels_;
  RemovedSet removed_;
  StructureForest forest_;
  InvariantChecker checker_;
};

// Even-length alternating path inside blossom b from its base to x: simple,
// edges of G, first edge unmatched and last edge matched.
void ExpectEvenPath(const Fixture& f, const StructureForest& forest,
                    BlossomId b, Vertex x, const std::vector<Vertex>& path) {
  ASSERT_FALSE(path.empty());
  EXPECT_EQ(path.front(), forest.blossom(b).base);
  EXPECT_EQ(path.back(), x);
  EXPECT_EQ(path.size() % 2, 1u);
  const auto members = forest.Members(b);
  std::set<Vertex> seen;
  for (size_t i = 0; i < path.size(); ++i) {
    EXPECT_TRUE(seen.insert(path[i]).second);
    EXPECT_NE(std::find(members.begin(), members.end(), path[i]),
              members.end());
    if (i + 1 < path.size()) {
      const Arc a{path[i], path[i + 1]};
      EXPECT_EQ(f.matching().IsMatched(a), i % 2 == 1) << "edge " << i;
      const auto& edges = f.graph().edges;
      const Edge e{std::min(a.tail, a.head), std::max(a.tail, a.head)};
      EXPECT_NE(std::find(edges.begin(), edges.end(), e), edges.end());
    }
  }
}

TEST(StructureForestTest, FreshStructure) {
  Fixture f(MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}}), {{1, 2}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  const Structure& st = forest.structure(s);
  EXPECT_EQ(st.size(), 1);
  EXPECT_EQ(st.working, 0);
  EXPECT_TRUE(st.active());
  EXPECT_TRUE(forest.IsOuter(0));
  EXPECT_TRUE(forest.IsWorking(0));
  EXPECT_TRUE(forest.IsUnvisited(1));
  EXPECT_EQ(forest.Distance(0), 0);
  EXPECT_THROW(f.Init(1), AlgorithmError);  // matched
  EXPECT_THROW(f.Init(0), AlgorithmError);  // already rooted
  f.ExpectHealthy();
}

TEST(StructureForestTest, OvertakeUnvisitedAddsTwoVertices) {
  Fixture f(MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}}), {{1, 2}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  EXPECT_EQ(forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1), OvertakeCase::kUnvisited);
  const Structure& st = forest.structure(s);
  EXPECT_EQ(st.size(), 3);
  EXPECT_EQ(st.working, 2);
  EXPECT_TRUE(st.modified);
  EXPECT_TRUE(forest.IsInner(1));
  EXPECT_TRUE(forest.IsOuter(2));
  EXPECT_EQ(forest.Distance(2), 1);
  EXPECT_EQ(forest.labels().Get(Arc{1, 2}), 1);
  EXPECT_EQ(forest.node(1).parent_arc, (Arc{0, 1}));
  EXPECT_EQ(forest.node(2).parent_arc, (Arc{1, 2}));
  EXPECT_EQ(forest.PathFromRoot(2), (std::vector<BlossomId>{0, 1, 2}));
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, OvertakePreconditions) {
  Fixture f(MakeGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  f.Init(0);
  // Not from a working vertex.
  EXPECT_THROW(forest.Overtake(Arc{2, 3}, Arc{3, 4}, 1), AlgorithmError);
  // Label not improved.
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  EXPECT_THROW(forest.Overtake(Arc{2, 3}, Arc{3, 4}, 7), AlgorithmError);
  // Malformed arcs.
  EXPECT_THROW(forest.Overtake(Arc{2, 3}, Arc{4, 3}, 2), AlgorithmError);
  EXPECT_EQ(forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2), OvertakeCase::kUnvisited);
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, OvertakeInsideOwnStructureReparents) {
  // 0 reaches 3 through 1-2 first, then directly.
  Fixture f(MakeGraph(5, {{1, 2}, {3, 4}, {0, 1}, {2, 3}, {0, 3}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  EXPECT_TRUE(forest.Backtrack(s));
  EXPECT_EQ(forest.structure(s).working, 2);
  EXPECT_TRUE(forest.Backtrack(s));
  EXPECT_EQ(forest.structure(s).working, 0);
  EXPECT_EQ(forest.Overtake(Arc{0, 3}, Arc{3, 4}, 1),
            OvertakeCase::kSameStructure);
  EXPECT_EQ(forest.node(3).parent, 0);
  EXPECT_EQ(forest.node(3).parent_arc, (Arc{0, 3}));
  EXPECT_TRUE(forest.node(2).children.empty());
  EXPECT_EQ(forest.structure(s).working, 4);
  EXPECT_EQ(forest.labels().Get(Arc{3, 4}), 1);
  EXPECT_EQ(forest.structure(s).arcs.size(), 4u);
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, OvertakeFromOtherStructureMovesSubtreeAndWorking) {
  Fixture f(MakeGraph(6, {{1, 2}, {3, 4}, {0, 1}, {2, 3}, {5, 3}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t a = f.Init(0);
  const int32_t b = f.Init(5);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  ASSERT_EQ(forest.structure(a).working, 4);
  EXPECT_EQ(forest.Overtake(Arc{5, 3}, Arc{3, 4}, 1),
            OvertakeCase::kOtherStructure);
  EXPECT_EQ(forest.structure(a).size(), 3);
  EXPECT_EQ(forest.structure(b).size(), 3);
  EXPECT_EQ(forest.OwnerOfVertex(3), b);
  EXPECT_EQ(forest.OwnerOfVertex(4), b);
  // The working vertex travelled with the subtree; the old owner resumes at
  // the tail of the detached arc.
  EXPECT_EQ(forest.structure(b).working, 4);
  EXPECT_EQ(forest.structure(a).working, 2);
  EXPECT_TRUE(forest.structure(a).modified);
  EXPECT_TRUE(forest.structure(b).modified);
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, OvertakeFromOtherStructureKeepsWorkingOutside) {
  Fixture f(MakeGraph(6, {{1, 2}, {3, 4}, {0, 1}, {2, 3}, {5, 3}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t a = f.Init(0);
  const int32_t b = f.Init(5);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  forest.Backtrack(a);
  ASSERT_EQ(forest.structure(a).working, 2);
  forest.Overtake(Arc{5, 3}, Arc{3, 4}, 1);
  EXPECT_EQ(forest.structure(a).working, 2);
  EXPECT_EQ(forest.structure(b).working, 4);
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, ContractTriangle) {
  Fixture f(MakeGraph(3, {{1, 2}, {0, 1}, {0, 2}}), {{1, 2}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  EXPECT_THROW(forest.Contract(Arc{0, 2}), AlgorithmError);  // 0 not working
  const BlossomId b = forest.Contract(Arc{2, 0});
  EXPECT_EQ(b, 3);
  const Blossom& blossom = forest.blossom(b);
  EXPECT_EQ(blossom.base, 0);
  EXPECT_EQ(blossom.children, (std::vector<BlossomId>{0, 1, 2}));
  EXPECT_EQ(blossom.cycle, (std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}}));
  for (Vertex v : {0, 1, 2}) EXPECT_EQ(forest.Resolve(v), b);
  EXPECT_EQ(forest.structure(s).root, b);
  EXPECT_EQ(forest.structure(s).working, b);
  EXPECT_EQ(forest.labels().Get(Arc{1, 2}), 0);
  EXPECT_EQ(forest.labels().Get(Arc{2, 1}), 0);
  EXPECT_EQ(forest.Distance(1), 0);
  f.ExpectStructuresHealthy();

  EXPECT_EQ(forest.EvenAlternatingPath(b, 2), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(forest.EvenAlternatingPath(b, 1), (std::vector<Vertex>{0, 2, 1}));
  EXPECT_EQ(forest.EvenAlternatingPath(b, 0), (std::vector<Vertex>{0}));
  EXPECT_EQ(forest.EvenAlternatingPath(1, 1), (std::vector<Vertex>{1}));
  EXPECT_THROW(forest.EvenAlternatingPath(1, 2), AlgorithmError);
}

TEST(StructureForestTest, ContractFiveCycle) {
  Fixture f(MakeGraph(5, {{1, 2}, {3, 4}, {0, 1}, {2, 3}, {0, 4}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  const BlossomId b = forest.Contract(Arc{4, 0});
  EXPECT_EQ(forest.Members(b).size(), 5u);
  EXPECT_EQ(forest.EvenAlternatingPath(b, 3), (std::vector<Vertex>{0, 4, 3}));
  for (Vertex x = 0; x < 5; ++x) {
    ExpectEvenPath(f, forest, b, x, forest.EvenAlternatingPath(b, x));
  }
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, ContractAroundNestedBlossom) {
  Fixture f(MakeGraph(5, {{1, 2}, {3, 4}, {0, 1}, {0, 2}, {2, 3}, {0, 4}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  const BlossomId inner = forest.Contract(Arc{2, 0});
  EXPECT_EQ(forest.Distance(2), 0);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 1);
  const BlossomId outer = forest.Contract(Arc{4, 0});
  EXPECT_EQ(forest.blossom(outer).children,
            (std::vector<BlossomId>{inner, 3, 4}));
  EXPECT_EQ(forest.blossom(inner).parent, outer);
  EXPECT_EQ(forest.structure(s).root, outer);
  EXPECT_EQ(forest.EvenAlternatingPath(outer, 4),
            (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(forest.EvenAlternatingPath(outer, 1),
            (std::vector<Vertex>{0, 2, 1}));
  for (Vertex x = 0; x < 5; ++x) {
    ExpectEvenPath(f, forest, outer, x, forest.EvenAlternatingPath(outer, x));
  }
  f.ExpectStructuresHealthy();
}

TEST(StructureForestTest, ContractBelowTheRootKeepsTreePosition) {
  // Odd cycle 2-3-4-5-6 hanging below the root through matched (1,2).
  Fixture f(MakeGraph(7, {{1, 2}, {3, 4}, {5, 6}, {0, 1}, {2, 3}, {4, 5},
                          {2, 6}}),
            {{1, 2}, {3, 4}, {5, 6}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  forest.Overtake(Arc{4, 5}, Arc{5, 6}, 3);
  const BlossomId b = forest.Contract(Arc{6, 2});
  EXPECT_EQ(forest.blossom(b).base, 2);
  EXPECT_EQ(forest.node(b).parent, 1);
  EXPECT_EQ(forest.node(b).parent_arc, (Arc{1, 2}));
  EXPECT_EQ(forest.node(1).children, (std::vector<BlossomId>{b}));
  EXPECT_EQ(forest.Distance(5), 1);
  EXPECT_EQ(forest.labels().Get(Arc{1, 2}), 1);
  EXPECT_EQ(forest.structure(s).working, b);
  f.ExpectStructuresHealthy();
  // Backtracking from the blossom returns to the root.
  forest.Backtrack(s);
  EXPECT_EQ(forest.structure(s).working, 0);
  forest.Backtrack(s);
  EXPECT_EQ(forest.structure(s).working, kNone);
  EXPECT_FALSE(forest.Backtrack(s));
}

TEST(StructureForestTest, AugmentThroughContractedTriangle) {
  Fixture f(MakeGraph(6, {{1, 2}, {3, 4}, {0, 1}, {0, 2}, {2, 3}, {4, 5}}),
            {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t a = f.Init(0);
  const int32_t b = f.Init(5);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Contract(Arc{2, 0});
  forest.Overtake(Arc{5, 4}, Arc{4, 3}, 1);
  f.ExpectStructuresHealthy();
  EXPECT_THROW(forest.AugmentingPath(Arc{0, 2}), AlgorithmError);
  const auto path = forest.AugmentingPath(Arc{2, 3});
  EXPECT_EQ(path, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  const auto reverse = forest.AugmentingPath(Arc{3, 2});
  EXPECT_EQ(reverse, (std::vector<Vertex>{5, 4, 3, 2, 1, 0}));

  forest.RemoveStructures(a, b);
  EXPECT_EQ(f.removed().size(), 6);
  EXPECT_FALSE(forest.structure(a).live);
  EXPECT_FALSE(forest.structure(b).active());
  for (Vertex v = 0; v < 6; ++v) {
    EXPECT_EQ(forest.Resolve(v), v);
    EXPECT_EQ(forest.OwnerOfVertex(v), kNone);
  }
  EXPECT_THROW(forest.RemoveStructures(a, a), AlgorithmError);
}

TEST(StructureForestTest, SingleEdgeAugmentation) {
  Fixture f(MakeGraph(2, {{0, 1}}), {});
  auto& forest = f.forest();
  f.Init(0);
  f.Init(1);
  EXPECT_EQ(forest.AugmentingPath(Arc{1, 0}), (std::vector<Vertex>{1, 0}));
}

TEST(StructureForestTest, BacktrackWalksUpTwoLevels) {
  Fixture f(MakeGraph(5, {{1, 2}, {3, 4}, {0, 1}, {2, 3}}), {{1, 2}, {3, 4}});
  auto& forest = f.forest();
  const int32_t s = f.Init(0);
  forest.Overtake(Arc{0, 1}, Arc{1, 2}, 1);
  forest.Overtake(Arc{2, 3}, Arc{3, 4}, 2);
  EXPECT_TRUE(forest.Backtrack(s));
  EXPECT_EQ(forest.structure(s).working, 2);
  EXPECT_TRUE(forest.Backtrack(s));
  EXPECT_EQ(forest.structure(s).working, 0);
  EXPECT_TRUE(forest.Backtrack(s));
  EXPECT_FALSE(forest.structure(s).active());
  EXPECT_TRUE(forest.structure(s).live);
  // Inactive structures still own their vertices.
  EXPECT_EQ(forest.structure(s).size(), 5);
  f.ExpectStructuresHealthy();
}

}  // namespace
}  // namespace ssmatch
