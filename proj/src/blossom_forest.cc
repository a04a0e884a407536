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
#include <string>

namespace ssmatch {
namespace {

[[noreturn]] void Fail(const std::string& what) {
  throw AlgorithmError(what);
}

std::string ArcString(Arc a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

}  // namespace

const char* OvertakeCaseName(OvertakeCase c) {
  switch (c) {
    case OvertakeCase::kUnvisited:
      return "1";
    case OvertakeCase::kSameStructure:
      return "2.1";
    case OvertakeCase::kOtherStructure:
      return "2.2";
  }
  return "?";
}

StructureForest::StructureForest(const Matching& matching,
                                 ArcLabelTable& labels, RemovedSet& removed)
    : matching_(&matching), labels_(&labels), removed_(&removed) {
  const int32_t n = matching.vertex_count();
  root_of_.resize(static_cast<size_t>(n));
  owner_.assign(static_cast<size_t>(n), kNone);
  blossoms_.resize(static_cast<size_t>(n));
  nodes_.resize(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    root_of_[v] = v;
    blossoms_[v].base = v;
  }
}

bool StructureForest::IsWorking(BlossomId b) const {
  const int32_t s = OwnerOf(b);
  return s != kNone && structures_[s].working == b;
}

int32_t StructureForest::Distance(Vertex u) const {
  const BlossomId b = root_of_[u];
  const int32_t s = OwnerOf(b);
  if (s == kNone) Fail("distance of a vertex outside every structure");
  if (structures_[s].root == b) return 0;
  return labels_->Get(nodes_[b].parent_arc);
}

void StructureForest::CollectMembers(BlossomId b,
                                     std::vector<Vertex>& out) const {
  const Blossom& blossom = blossoms_[b];
  if (blossom.trivial()) {
    out.push_back(b);
    return;
  }
  for (BlossomId c : blossom.children) CollectMembers(c, out);
}

std::vector<Vertex> StructureForest::Members(BlossomId b) const {
  std::vector<Vertex> out;
  CollectMembers(b, out);
  return out;
}

std::vector<BlossomId> StructureForest::PathFromRoot(BlossomId b) const {
  std::vector<BlossomId> path;
  for (BlossomId x = b; x != kNone; x = nodes_[x].parent) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

bool StructureForest::IsAncestor(BlossomId ancestor, BlossomId b) const {
  for (BlossomId x = b; x != kNone; x = nodes_[x].parent) {
    if (x == ancestor) return true;
  }
  return false;
}

void StructureForest::CollectSubtree(BlossomId b,
                                     std::vector<BlossomId>& out) const {
  out.push_back(b);
  for (BlossomId c : nodes_[b].children) CollectSubtree(c, out);
}

void StructureForest::DetachFromParent(BlossomId b) {
  const BlossomId p = nodes_[b].parent;
  if (p == kNone) return;
  auto& siblings = nodes_[p].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), b));
  nodes_[b].parent = kNone;
}

void StructureForest::AttachChild(BlossomId parent, BlossomId child, Arc arc) {
  nodes_[child].parent = parent;
  nodes_[child].parent_arc = arc;
  nodes_[parent].children.push_back(child);
}

void StructureForest::EraseArc(std::vector<Arc>& arcs, Arc a) {
  auto it = std::find(arcs.begin(), arcs.end(), a);
  if (it == arcs.end()) Fail("arc " + ArcString(a) + " not in structure");
  arcs.erase(it);
}

int32_t StructureForest::InitStructure(Vertex alpha) {
  if (!matching_->IsFree(alpha) || removed_->contains(alpha) ||
      owner_[alpha] != kNone) {
    Fail("cannot start a structure at " + std::to_string(alpha));
  }
  const auto index = static_cast<int32_t>(structures_.size());
  Structure s;
  s.alpha = alpha;
  s.root = alpha;
  s.working = alpha;
  s.vertices.push_back(alpha);
  structures_.push_back(std::move(s));
  owner_[alpha] = index;
  nodes_[alpha] = TreeNode{};
  nodes_[alpha].outer = true;
  return index;
}

BlossomId StructureForest::Contract(Arc g) {
  const BlossomId ub = root_of_[g.tail];
  const BlossomId vb = root_of_[g.head];
  const int32_t s = OwnerOf(ub);
  if (ub == vb || s == kNone || OwnerOf(vb) != s || !nodes_[ub].outer ||
      !nodes_[vb].outer || structures_[s].working != ub ||
      matching_->IsMatched(g)) {
    Fail("contract precondition violated for " + ArcString(g));
  }

  // The cycle is the tree path lca -> Omega(u), then g, then the tree path
  // Omega(v) -> lca.
  const std::vector<BlossomId> from_root = PathFromRoot(ub);
  std::vector<BlossomId> up_side;
  BlossomId lca = vb;
  while (std::find(from_root.begin(), from_root.end(), lca) == from_root.end()) {
    up_side.push_back(lca);
    lca = nodes_[lca].parent;
  }
  const auto lca_pos = std::find(from_root.begin(), from_root.end(), lca);

  Blossom b;
  b.children.assign(lca_pos, from_root.end());
  for (size_t i = 1; i < b.children.size(); ++i) {
    b.cycle.push_back(nodes_[b.children[i]].parent_arc);
  }
  b.cycle.push_back(g);
  for (BlossomId x : up_side) {
    b.children.push_back(x);
    b.cycle.push_back(nodes_[x].parent_arc.Reversed());
  }
  b.base = blossoms_[lca].base;

  const auto id = static_cast<BlossomId>(blossoms_.size());
  for (BlossomId c : b.children) blossoms_[c].parent = id;

  TreeNode node;
  node.parent = nodes_[lca].parent;
  node.parent_arc = nodes_[lca].parent_arc;
  node.outer = true;
  for (BlossomId c : b.children) {
    for (BlossomId grandchild : nodes_[c].children) {
      if (std::find(b.children.begin(), b.children.end(), grandchild) ==
          b.children.end()) {
        node.children.push_back(grandchild);
      }
    }
  }
  if (node.parent != kNone) {
    auto& siblings = nodes_[node.parent].children;
    *std::find(siblings.begin(), siblings.end(), lca) = id;
  }
  for (BlossomId c : node.children) nodes_[c].parent = id;
  for (BlossomId c : b.children) nodes_[c] = TreeNode{};

  blossoms_.push_back(std::move(b));
  nodes_.push_back(std::move(node));

  Structure& st = structures_[s];
  if (st.root == lca) st.root = id;
  const std::vector<Vertex> members = Members(id);
  for (Vertex x : members) root_of_[x] = id;
  for (Vertex x : members) {
    const Vertex y = matching_->mate(x);
    if (y != kNone && root_of_[y] == id) labels_->Set(Arc{x, y}, 0);
  }
  st.arcs.push_back(g);
  st.blossoms.push_back(id);
  st.working = id;
  st.modified = true;
  return id;
}

OvertakeCase StructureForest::Overtake(Arc g, Arc a, int32_t k) {
  const Vertex v = g.head;
  const Vertex t = a.head;
  const BlossomId ub = root_of_[g.tail];
  const BlossomId vb = root_of_[v];
  const BlossomId tb = root_of_[t];
  const int32_t s = OwnerOf(ub);
  if (a.tail != v || !matching_->IsMatched(a) || matching_->IsMatched(g)) {
    Fail("overtake arcs malformed: " + ArcString(g) + " " + ArcString(a));
  }
  if (s == kNone || structures_[s].working != ub) {
    Fail("overtake (P1) violated for " + ArcString(g));
  }
  if (vb == ub || !blossoms_[vb].trivial() || IsOuter(vb) ||
      (OwnerOf(vb) == s && IsAncestor(vb, ub))) {
    Fail("overtake (P2) violated for " + ArcString(g));
  }
  if (k >= labels_->Get(a)) Fail("overtake (P3) violated for " + ArcString(a));
  labels_->Set(a, k);

  Structure& st = structures_[s];
  if (IsUnvisited(vb)) {
    owner_[v] = s;
    owner_[t] = s;
    st.vertices.push_back(v);
    st.vertices.push_back(t);
    st.arcs.push_back(g);
    st.arcs.push_back(a);
    nodes_[vb] = TreeNode{};
    nodes_[tb] = TreeNode{};
    AttachChild(ub, vb, g);
    AttachChild(vb, tb, a);
    nodes_[tb].outer = true;
    st.working = tb;
    st.modified = true;
    return OvertakeCase::kUnvisited;
  }

  const int32_t r = OwnerOf(vb);
  const Arc old_arc = nodes_[vb].parent_arc;
  if (r == s) {
    EraseArc(st.arcs, old_arc);
    st.arcs.push_back(g);
    DetachFromParent(vb);
    AttachChild(ub, vb, g);
    st.working = tb;
    st.modified = true;
    return OvertakeCase::kSameStructure;
  }

  Structure& other = structures_[r];
  const BlossomId other_working = other.working;
  const bool working_moves =
      other_working != kNone && IsAncestor(tb, other_working);

  // Step 1: swap the arc connecting the subtree.
  EraseArc(other.arcs, old_arc);
  st.arcs.push_back(g);
  DetachFromParent(vb);
  AttachChild(ub, vb, g);

  // Step 2: vertices of the subtree.
  std::vector<BlossomId> subtree;
  CollectSubtree(vb, subtree);
  for (BlossomId x : subtree) {
    for (Vertex w : Members(x)) {
      owner_[w] = s;
      st.vertices.push_back(w);
    }
  }
  std::erase_if(other.vertices, [&](Vertex w) { return owner_[w] == s; });

  // Step 3: arcs with both endpoints moved.
  std::erase_if(other.arcs, [&](Arc x) {
    if (owner_[x.tail] == s && owner_[x.head] == s) {
      st.arcs.push_back(x);
      return true;
    }
    return false;
  });

  // Step 4: blossoms over moved vertices.
  std::erase_if(other.blossoms, [&](BlossomId x) {
    if (owner_[blossoms_[x].base] == s) {
      st.blossoms.push_back(x);
      return true;
    }
    return false;
  });

  // Step 5: working-vertex handoff.
  if (working_moves) {
    st.working = other_working;
    other.working = root_of_[old_arc.tail];
  } else {
    st.working = tb;
  }
  st.modified = true;
  other.modified = true;
  return OvertakeCase::kOtherStructure;
}

std::vector<Vertex> StructureForest::AugmentingPath(Arc g) const {
  const BlossomId ub = root_of_[g.tail];
  const BlossomId vb = root_of_[g.head];
  const int32_t s = OwnerOf(ub);
  const int32_t r = OwnerOf(vb);
  if (s == kNone || r == kNone || s == r || !nodes_[ub].outer ||
      !nodes_[vb].outer || matching_->IsMatched(g)) {
    Fail("augment precondition violated for " + ArcString(g));
  }
  std::vector<BlossomId> path = PathFromRoot(ub);
  std::vector<Arc> arcs;
  for (size_t i = 1; i < path.size(); ++i) {
    arcs.push_back(nodes_[path[i]].parent_arc);
  }
  arcs.push_back(g);
  for (BlossomId x = vb; x != kNone; x = nodes_[x].parent) {
    path.push_back(x);
    if (nodes_[x].parent != kNone) {
      arcs.push_back(nodes_[x].parent_arc.Reversed());
    }
  }
  return LiftPath(path, arcs);
}

std::vector<Vertex> StructureForest::LiftPath(std::span<const BlossomId> nodes,
                                              std::span<const Arc> arcs) const {
  if (nodes.empty() || arcs.size() + 1 != nodes.size()) {
    Fail("lift: node/arc count mismatch");
  }
  std::vector<Vertex> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const BlossomId b = nodes[i];
    const Vertex base = blossoms_[b].base;
    const Vertex entry = i == 0 ? base : arcs[i - 1].head;
    const Vertex exit = i + 1 == nodes.size() ? base : arcs[i].tail;
    if (root_of_[entry] != b || root_of_[exit] != b) {
      Fail("lift: arc endpoint outside its node");
    }
    if (entry == base) {
      AppendEvenPath(b, exit, out);
    } else if (exit == base) {
      AppendPathToBase(b, entry, out);
    } else {
      Fail("lift: path passes a blossom without touching its base");
    }
  }
  if (!matching_->IsFree(out.front()) || !matching_->IsFree(out.back())) {
    Fail("lift: endpoints are not free");
  }
  return out;
}

std::vector<Vertex> StructureForest::EvenAlternatingPath(BlossomId b,
                                                         Vertex x) const {
  if (x < 0 || x >= vertex_count()) Fail("vertex out of range");
  BlossomId top = x;
  while (top != b && blossoms_[top].parent != kNone) top = blossoms_[top].parent;
  if (top != b) Fail("vertex " + std::to_string(x) + " not in blossom");
  std::vector<Vertex> out;
  AppendEvenPath(b, x, out);
  return out;
}

void StructureForest::AppendEvenPath(BlossomId b, Vertex x,
                                     std::vector<Vertex>& out) const {
  std::vector<Vertex> tmp;
  AppendPathToBase(b, x, tmp);
  out.insert(out.end(), tmp.rbegin(), tmp.rend());
}

int32_t StructureForest::ChildIndexContaining(BlossomId b, Vertex x) const {
  BlossomId c = x;
  while (blossoms_[c].parent != b) {
    c = blossoms_[c].parent;
    if (c == kNone) Fail("vertex not inside blossom");
  }
  const auto& children = blossoms_[b].children;
  return static_cast<int32_t>(
      std::find(children.begin(), children.end(), c) - children.begin());
}

// Appends x, ..., base(b): the edge at x is matched, the edge into the base
// unmatched. Inside the cycle the walk leaves A_j over its matched cycle edge,
// which fixes the direction.
void StructureForest::AppendPathToBase(BlossomId b, Vertex x,
                                       std::vector<Vertex>& out) const {
  const Blossom& blossom = blossoms_[b];
  if (blossom.trivial()) {
    out.push_back(x);
    return;
  }
  const auto& kids = blossom.children;
  const auto len = static_cast<int32_t>(kids.size());
  int32_t j = ChildIndexContaining(b, x);
  AppendPathToBase(kids[j], x, out);
  if (j == 0) return;

  auto expect_at = [&](Vertex v) {
    if (out.back() != v) Fail("blossom cycle is not alternating at its bases");
  };
  if (j % 2 == 1) {
    for (int32_t i = j;;) {
      const Arc matched = blossom.cycle[i];
      expect_at(matched.tail);
      const int32_t next = i + 1;
      const Arc free_arc = blossom.cycle[next];
      if (blossoms_[kids[next]].base != matched.head) {
        Fail("matched cycle edge misses a child base");
      }
      AppendEvenPath(kids[next], free_arc.tail, out);
      const int32_t after = (next + 1) % len;
      AppendPathToBase(kids[after], free_arc.head, out);
      if (after == 0) return;
      i = after;
    }
  }
  for (int32_t i = j;;) {
    const Arc matched = blossom.cycle[i - 1];
    expect_at(matched.head);
    const int32_t prev = i - 1;
    const Arc free_arc = blossom.cycle[prev - 1];
    if (blossoms_[kids[prev]].base != matched.tail) {
      Fail("matched cycle edge misses a child base");
    }
    AppendEvenPath(kids[prev], free_arc.head, out);
    const int32_t before = prev - 1;
    AppendPathToBase(kids[before], free_arc.tail, out);
    if (before == 0) return;
    i = before;
  }
}

void StructureForest::RemoveStructures(int32_t s, int32_t r) {
  if (s == r) Fail("cannot remove a structure against itself");
  for (int32_t idx : {s, r}) {
    Structure& st = structures_[idx];
    for (Vertex v : st.vertices) {
      removed_->Add(v);
      owner_[v] = kNone;
      root_of_[v] = v;
      blossoms_[v].parent = kNone;
      nodes_[v] = TreeNode{};
    }
    st.live = false;
    st.working = kNone;
    st.vertices.clear();
    st.arcs.clear();
    st.blossoms.clear();
  }
}

bool StructureForest::Backtrack(int32_t s) {
  Structure& st = structures_[s];
  if (!st.live || st.working == kNone) return false;
  if (st.working == st.root) {
    st.working = kNone;
  } else {
    st.working = nodes_[nodes_[st.working].parent].parent;
  }
  return true;
}

}  // namespace ssmatch
