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

#include "ssmatch/invariant_checker.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "ssmatch/oracle.h"

namespace ssmatch {
namespace {

std::string ArcText(Arc a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

std::string PathText(const std::vector<Vertex>& path) {
  std::string out;
  for (Vertex v : path) {
    if (!out.empty()) out += "-";
    out += std::to_string(v);
  }
  return out;
}

// The child of `b` whose blossom contains vertex x, or kNone.
BlossomId ChildOf(const StructureForest& forest, BlossomId b, Vertex x) {
  BlossomId c = x;
  while (c != kNone && forest.blossom(c).parent != b) {
    c = forest.blossom(c).parent;
  }
  return c;
}

}  // namespace

bool MeetsGuarantee(int64_t size, int64_t nu, int64_t eps_inv) {
  return static_cast<__int128>(eps_inv + 1) * size >=
         static_cast<__int128>(eps_inv) * nu;
}

InvariantChecker::InvariantChecker(Graph graph, CheckerOptions options)
    : graph_(std::move(graph)), options_(options) {
  for (const Edge& e : graph_.edges) {
    edge_keys_.insert(int64_t{std::min(e.u, e.v)} * graph_.n +
                      std::max(e.u, e.v));
  }
}

bool InvariantChecker::HasEdge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= graph_.n || v >= graph_.n) return false;
  return edge_keys_.contains(int64_t{std::min(u, v)} * graph_.n +
                             std::max(u, v));
}

void InvariantChecker::Report(std::string invariant, Vertex structure,
                              std::string witness) {
  ++total_;
  if (recorded_.size() < options_.max_recorded) {
    recorded_.push_back(
        {std::move(invariant), bundle_, structure, std::move(witness)});
  }
}

void InvariantChecker::OnPhaseStart(const StructureForest& forest,
                                    const PhaseContext& context) {
  params_ = *context.params;
  phase_matching_ = context.matching;
  short_paths_.clear();
  if (graph_.n <= options_.critical_path_max_n &&
      graph_.n <= kEnumerationLimit) {
    short_paths_ = EnumerateShortAugmentingPaths(graph_, forest.matching(),
                                                 params_.max_label);
  }
}

void InvariantChecker::OnBundleStart(const StructureForest& forest,
                                     int64_t bundle) {
  bundle_ = bundle;
  ++counters_.boundary_checks;
  // Global disjointness: every owned vertex is listed by its live owner, and
  // every free vertex not yet removed still roots its own structure.
  int64_t listed = 0;
  for (const Structure& st : forest.structures()) {
    if (st.live) listed += st.size();
  }
  int64_t owned = 0;
  for (Vertex v = 0; v < graph_.n; ++v) {
    const int32_t s = forest.OwnerOfVertex(v);
    if (s != kNone) {
      ++owned;
      if (!forest.structure(s).live || forest.removed().contains(v)) {
        Report("structure-disjointness", kNone,
               "vertex " + std::to_string(v) + " owned by a dead structure");
      }
    } else if (forest.matching().IsFree(v) && !forest.removed().contains(v)) {
      Report("structure-disjointness", v, "free vertex without a structure");
    }
  }
  if (owned != listed) {
    Report("structure-disjointness", kNone,
           std::to_string(owned) + " owned vertices, " +
               std::to_string(listed) + " listed");
  }
  for (int32_t s = 0; s < forest.structure_count(); ++s) {
    CheckStructure(forest, s);
  }
  CheckOuterIndependence(forest);
  if (!short_paths_.empty()) CheckCriticalPaths(forest);
}

void InvariantChecker::AfterOperation(const StructureForest& forest,
                                      std::span<const int32_t> touched) {
  if (!options_.after_each_operation) return;
  for (int32_t s : touched) CheckStructure(forest, s);
}

void InvariantChecker::CheckStructure(const StructureForest& forest,
                                      int32_t s) {
  const Structure& st = forest.structure(s);
  if (!st.live) return;
  ++counters_.structure_checks;
  const Matching& matching = forest.matching();
  const Vertex alpha = st.alpha;
  const auto n = static_cast<size_t>(graph_.n);

  // Sizes.
  if (st.size() > params_.size_limit * params_.max_label) {
    Report("structure-size", alpha, std::to_string(st.size()) + " vertices");
  }
  if (st.size() > params_.space_bound) {
    Report("space-vertices", alpha, std::to_string(st.size()) + " vertices");
  }
  if (static_cast<int64_t>(st.arcs.size()) >
      params_.space_bound * params_.space_bound) {
    Report("space-arcs", alpha, std::to_string(st.arcs.size()) + " arcs");
  }

  // Vertex set.
  std::vector<uint8_t> member(n, 0);
  for (Vertex v : st.vertices) {
    if (member[v]) {
      Report("structure-disjointness", alpha,
             "vertex " + std::to_string(v) + " listed twice");
    }
    member[v] = 1;
    if (forest.OwnerOfVertex(v) != s || forest.removed().contains(v)) {
      Report("structure-disjointness", alpha,
             "vertex " + std::to_string(v) + " has another owner");
    }
    const Vertex w = matching.mate(v);
    if (w == kNone ? v != alpha : forest.OwnerOfVertex(w) != s) {
      Report("tree-representation", alpha,
             "vertex " + std::to_string(v) + " without its mate");
    }
  }

  // Walk the contracted tree from the root.
  const BlossomId root = st.root;
  if (root == kNone || forest.blossom(root).base != alpha ||
      forest.Resolve(alpha) != root || !forest.node(root).outer ||
      forest.node(root).parent != kNone) {
    Report("tree-representation", alpha, "root does not hold alpha");
    return;
  }
  std::set<std::pair<BlossomId, BlossomId>> tree_edges;
  std::vector<BlossomId> composites;
  size_t covered = 0;
  bool working_seen = st.working == kNone;
  // (node, label of the matched tree arc above it, path text)
  struct Item {
    BlossomId b;
    int32_t label_above;
  };
  std::vector<Item> stack{{root, 0}};
  while (!stack.empty()) {
    const auto [b, label_above] = stack.back();
    stack.pop_back();
    const TreeNode& node = forest.node(b);
    const Blossom& blossom = forest.blossom(b);
    if (forest.Resolve(blossom.base) != b) {
      Report("tree-representation", alpha,
             "node " + std::to_string(b) + " is not a root blossom");
      continue;
    }
    if (b == st.working) {
      working_seen = true;
      if (!node.outer) {
        Report("tree-representation", alpha, "working vertex is inner");
      }
    }
    if (!blossom.trivial()) composites.push_back(b);
    for (Vertex x : forest.Members(b)) {
      ++covered;
      if (!member[x] || forest.Resolve(x) != b) {
        Report("tree-representation", alpha,
               "vertex " + std::to_string(x) + " misplaced in node " +
                   std::to_string(b));
      }
    }
    if (b != root) {
      const Arc a = node.parent_arc;
      if (forest.Resolve(a.tail) != node.parent || forest.Resolve(a.head) != b) {
        Report("tree-representation", alpha,
               "parent arc " + ArcText(a) + " does not join its nodes");
      }
      const bool matched = matching.IsMatched(a);
      if (node.outer != matched ||
          (node.outer && a.head != blossom.base)) {
        Report("tree-representation", alpha,
               "parent arc " + ArcText(a) + " has the wrong type");
      }
      tree_edges.insert(std::minmax(node.parent, b));
    }
    int32_t label_below = label_above;
    if (!node.outer) {
      if (!blossom.trivial() || node.children.size() != 1) {
        Report("tree-representation", alpha,
               "inner node " + std::to_string(b) + " is not a single vertex "
               "with one child");
      } else {
        const Arc down = forest.node(node.children[0]).parent_arc;
        if (down.tail != b || !matching.IsMatched(down)) {
          Report("tree-representation", alpha,
                 "inner node " + std::to_string(b) + " not matched to child");
        } else {
          label_below = forest.labels().Get(down);
          if (label_below <= label_above || label_below > params_.max_label) {
            Report("increasing-labeling", alpha,
                   "label " + std::to_string(label_below) + " on " +
                       ArcText(down) + " below label " +
                       std::to_string(label_above));
          }
        }
      }
    }
    for (BlossomId c : node.children) {
      if (forest.node(c).parent != b || forest.node(c).outer == node.outer) {
        Report("tree-representation", alpha,
               "child " + std::to_string(c) + " inconsistent with parent");
        continue;
      }
      stack.push_back({c, label_below});
    }
  }
  if (covered != st.vertices.size()) {
    Report("tree-representation", alpha,
           std::to_string(covered) + " tree vertices, " +
               std::to_string(st.vertices.size()) + " listed");
  }
  if (!working_seen) {
    Report("tree-representation", alpha, "working vertex not in the tree");
  }

  // Blossoms, collecting their cycle edges.
  std::set<std::pair<Vertex, Vertex>> cycle_edges;
  std::vector<BlossomId> pending = composites;
  while (!pending.empty()) {
    const BlossomId b = pending.back();
    pending.pop_back();
    const Blossom& blossom = forest.blossom(b);
    const size_t k = blossom.children.size();
    if (k < 3 || k % 2 == 0 || blossom.cycle.size() != k ||
        forest.blossom(blossom.children[0]).base != blossom.base) {
      Report("blossom-shape", alpha,
             "blossom " + std::to_string(b) + " has a malformed cycle");
      continue;
    }
    for (size_t i = 0; i < k; ++i) {
      const Arc a = blossom.cycle[i];
      cycle_edges.insert(std::minmax(a.tail, a.head));
      if (ChildOf(forest, b, a.tail) != blossom.children[i] ||
          ChildOf(forest, b, a.head) != blossom.children[(i + 1) % k] ||
          matching.IsMatched(a) != (i % 2 == 1) || !HasEdge(a.tail, a.head)) {
        Report("blossom-shape", alpha,
               "cycle arc " + ArcText(a) + " of blossom " + std::to_string(b));
      }
      if (!forest.blossom(blossom.children[i]).trivial()) {
        pending.push_back(blossom.children[i]);
      }
    }
    const auto members = forest.Members(b);
    int64_t exposed = 0;
    for (Vertex x : members) {
      const Vertex y = matching.mate(x);
      const bool inside =
          y != kNone && std::find(members.begin(), members.end(), y) !=
                            members.end();
      if (!inside) {
        ++exposed;
        if (x != blossom.base) {
          Report("blossom-shape", alpha,
                 "vertex " + std::to_string(x) + " exposed but not base");
        }
      } else if (forest.labels().Get(Arc{x, y}) != 0) {
        Report("blossom-shape", alpha,
               "matched arc inside blossom " + std::to_string(b) +
                   " keeps a label");
      }
    }
    if (members.size() % 2 == 0 || exposed != 1) {
      Report("blossom-shape", alpha,
             "blossom " + std::to_string(b) + " has " +
                 std::to_string(members.size()) + " vertices");
    }
  }

  // Unique arc property against the stored arcs of G_alpha.
  std::map<std::pair<BlossomId, BlossomId>, int> realized;
  for (const Arc& a : st.arcs) {
    if (!HasEdge(a.tail, a.head) || !member[a.tail] || !member[a.head]) {
      Report("unique-arc", alpha, "arc " + ArcText(a) + " not inside G_alpha");
      continue;
    }
    const BlossomId x = forest.Resolve(a.tail);
    const BlossomId y = forest.Resolve(a.head);
    if (x == y) {
      if (!cycle_edges.contains(std::minmax(a.tail, a.head))) {
        Report("unique-arc", alpha,
               "arc " + ArcText(a) + " inside a node but on no cycle");
      }
      continue;
    }
    ++realized[std::minmax(x, y)];
  }
  for (const auto& [edge, count] : realized) {
    if (count != 1 || !tree_edges.contains(edge)) {
      Report("unique-arc", alpha,
             "nodes " + std::to_string(edge.first) + "," +
                 std::to_string(edge.second) + " joined by " +
                 std::to_string(count) + " arcs");
    }
  }
  if (realized.size() != tree_edges.size()) {
    Report("unique-arc", alpha, "a tree edge has no arc in G_alpha");
  }
}

void InvariantChecker::CheckOuterIndependence(const StructureForest& forest) {
  for (const Edge& e : graph_.edges) {
    if (forest.removed().contains(e.u) || forest.removed().contains(e.v)) {
      continue;
    }
    const BlossomId x = forest.Resolve(e.u);
    const BlossomId y = forest.Resolve(e.v);
    if (x != y && forest.IsOuter(x) && forest.IsOuter(y)) {
      Report("outer-independence", kNone, "arc " + ArcText(Arc{e.u, e.v}));
    }
  }
}

void InvariantChecker::CheckCriticalPaths(const StructureForest& forest) {
  // A directed arc (x, y) is critical when Omega(y) is a child of Omega(x)
  // on the active path of an active structure.
  auto critical_arc = [&](Vertex x, Vertex y) {
    const BlossomId bx = forest.Resolve(x);
    const BlossomId by = forest.Resolve(y);
    if (bx == by) return false;
    const int32_t s = forest.OwnerOf(by);
    if (s == kNone || forest.OwnerOf(bx) != s) return false;
    const Structure& st = forest.structure(s);
    return st.active() && forest.node(by).parent == bx &&
           forest.IsAncestor(by, st.working);
  };
  auto critical_start = [&](Vertex alpha) {
    const int32_t s = forest.OwnerOfVertex(alpha);
    return s != kNone && forest.structure(s).alpha == alpha &&
           forest.structure(s).active();
  };
  for (const auto& path : short_paths_) {
    if (std::any_of(path.begin(), path.end(), [&](Vertex v) {
          return forest.removed().contains(v);
        })) {
      continue;
    }
    for (int orientation = 0; orientation < 2; ++orientation) {
      std::vector<Vertex> p = path;
      if (orientation == 1) std::reverse(p.begin(), p.end());
      ++counters_.critical_path_checks;
      bool covered = critical_start(p.front());
      for (size_t i = 0; !covered && i + 1 < p.size(); ++i) {
        covered = critical_arc(p[i], p[i + 1]);
      }
      if (!covered) Report("critical-path", p.front(), PathText(p));
    }
  }
}

void InvariantChecker::OnPhaseEnd(const StructureForest& forest,
                                  const PhaseResult& result) {
  ++counters_.phase_checks;
  const Matching& start = *phase_matching_;
  if (result.active_at_end * params_.h_inv > start.size()) {
    Report("active-structures", kNone,
           std::to_string(result.active_at_end) + " active, |M| = " +
               std::to_string(start.size()));
  }
  if (forest.labels().max_reductions() > params_.max_label + 1) {
    Report("label-reductions", kNone,
           std::to_string(forest.labels().max_reductions()) + " reductions");
  }
  std::vector<uint8_t> used(static_cast<size_t>(graph_.n), 0);
  for (const auto& p : result.paths) {
    bool valid = p.size() >= 2 && p.size() % 2 == 0 &&
                 start.IsFree(p.front()) && start.IsFree(p.back());
    for (size_t i = 0; valid && i < p.size(); ++i) {
      if (used[p[i]]) valid = false;
      used[p[i]] = 1;
      if (i + 1 < p.size()) {
        valid = valid && HasEdge(p[i], p[i + 1]) &&
                (i % 2 == 0 ? !start.IsMatched(Arc{p[i], p[i + 1]})
                            : start.IsMatched(Arc{p[i], p[i + 1]}));
      }
    }
    if (!valid) Report("augmenting-paths", kNone, PathText(p));
  }
}

void InvariantChecker::OnScaleEnd(const ScaleParams& params,
                                  const Matching& matching) {
  if (options_.reference_size < 0) return;
  ++counters_.scale_checks;
  // nu <= (1 + 4 h l)(1 + 1/l) |M|, scaled by h_inv * l.
  const __int128 l = params.max_label;
  const __int128 lhs = static_cast<__int128>(options_.reference_size) *
                       params.h_inv * l;
  const __int128 rhs = (params.h_inv + 4 * l) * (l + 1) * matching.size();
  if (lhs > rhs) {
    Report("scale-guarantee", kNone,
           "|M| = " + std::to_string(matching.size()) + " at 1/h = " +
               std::to_string(params.h_inv));
  }
}

}  // namespace ssmatch
