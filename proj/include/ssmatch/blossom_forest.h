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

// Per-free-vertex search structures and the laminar blossom family they
// share.
//
// Every free vertex alpha owns a structure: a subgraph G_alpha of G together
// with a set of blossoms whose contraction turns G_alpha into an alternating
// tree rooted at the blossom containing alpha. Tree nodes are root blossoms.
// Inner nodes are always trivial (single vertices); outer nodes may be
// composite. Structures are vertex-disjoint.
//
// The forest keeps:
//   * the blossom family, with an eager vertex -> root-blossom map,
//   * an explicit contracted tree (parent, realizing arc, children) per
//     root blossom that belongs to a structure,
//   * per structure the vertex set, the arc set of G_alpha, its composite
//     blossoms and the working vertex.
//
// All of it is rebuilt from scratch for every phase.

#ifndef SSMATCH_BLOSSOM_FOREST_H_
#define SSMATCH_BLOSSOM_FOREST_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssmatch/matching.h"
#include "ssmatch/types.h"

namespace ssmatch {

// Ids [0, n) are the trivial blossoms {v}; composites are numbered from n.
using BlossomId = int32_t;

struct Blossom {
  BlossomId parent = kNone;  // enclosing blossom, kNone for root blossoms
  // Odd-length cycle A_0, ..., A_k of child blossoms; empty when trivial.
  std::vector<BlossomId> children;
  // cycle[i] joins children[i] to children[(i + 1) % size()]; the arcs with
  // odd index are matched.
  std::vector<Arc> cycle;
  Vertex base = kNone;

  bool trivial() const { return children.empty(); }
};

// Node of a contracted alternating tree. Indexed by root-blossom id.
struct TreeNode {
  BlossomId parent = kNone;
  // Arc of G_alpha realizing the tree edge: tail in the parent, head here.
  Arc parent_arc;
  std::vector<BlossomId> children;
  bool outer = false;
};

struct Structure {
  Vertex alpha = kNone;
  bool live = true;
  BlossomId root = kNone;
  BlossomId working = kNone;  // kNone once the structure is inactive
  bool on_hold = false;
  bool modified = false;
  std::vector<Vertex> vertices;       // V(G_alpha)
  std::vector<Arc> arcs;              // E(G_alpha), insertion order
  std::vector<BlossomId> blossoms;    // composite blossoms of Omega_alpha

  bool active() const { return live && working != kNone; }
  int64_t size() const { return static_cast<int64_t>(vertices.size()); }
};

enum class OvertakeCase {
  kUnvisited,       // the matched arc was not in any structure
  kSameStructure,   // re-parenting inside the initiator's own tree
  kOtherStructure,  // subtree moved over from another structure
};

const char* OvertakeCaseName(OvertakeCase c);

class StructureForest {
 public:
  StructureForest(const Matching& matching, ArcLabelTable& labels,
                  RemovedSet& removed);

  int32_t vertex_count() const { return matching_->vertex_count(); }
  const Matching& matching() const { return *matching_; }
  const ArcLabelTable& labels() const { return *labels_; }
  const RemovedSet& removed() const { return *removed_; }

  // --- Queries -------------------------------------------------------------

  // Omega(v): the root blossom containing v.
  BlossomId Resolve(Vertex v) const { return root_of_[v]; }
  const Blossom& blossom(BlossomId b) const { return blossoms_[b]; }
  const TreeNode& node(BlossomId b) const { return nodes_[b]; }
  int32_t blossom_count() const { return static_cast<int32_t>(blossoms_.size()); }

  // Index of the structure containing root blossom `b`, or kNone.
  int32_t OwnerOf(BlossomId b) const { return owner_[blossoms_[b].base]; }
  int32_t OwnerOfVertex(Vertex v) const { return owner_[v]; }

  bool IsUnvisited(BlossomId b) const { return OwnerOf(b) == kNone; }
  bool IsOuter(BlossomId b) const { return !IsUnvisited(b) && nodes_[b].outer; }
  bool IsInner(BlossomId b) const { return !IsUnvisited(b) && !nodes_[b].outer; }
  // True iff `b` is the working vertex of its structure.
  bool IsWorking(BlossomId b) const;

  std::span<const Structure> structures() const { return structures_; }
  const Structure& structure(int32_t s) const { return structures_[s]; }
  int32_t structure_count() const {
    return static_cast<int32_t>(structures_.size());
  }

  // 0 when Omega(u) is the root of its tree, else the label of the matched
  // tree arc entering Omega(u).
  int32_t Distance(Vertex u) const;

  // Vertices of G inside blossom `b`.
  std::vector<Vertex> Members(BlossomId b) const;
  // Tree nodes from the structure root down to `b`.
  std::vector<BlossomId> PathFromRoot(BlossomId b) const;
  bool IsAncestor(BlossomId ancestor, BlossomId b) const;

  // --- Operations ----------------------------------------------------------

  // Creates the singleton structure of a free, non-removed vertex. Returns
  // its index.
  int32_t InitStructure(Vertex alpha);

  // Contracts the blossom closed by unmatched arc g = (u, v), where Omega(u)
  // is the working vertex of a structure and Omega(v) is a distinct outer
  // vertex of the same structure. The new blossom becomes the working vertex.
  BlossomId Contract(Arc g);

  // Reattaches matched arc a = (v, t) below Omega(u) through unmatched
  // g = (u, v) and lowers its label to k.
  OvertakeCase Overtake(Arc g, Arc a, int32_t k);

  // Augmenting path in G through unmatched g = (u, v) joining outer vertices
  // of two different structures, from alpha to beta.
  std::vector<Vertex> AugmentingPath(Arc g) const;

  // Removes both structures: their vertices join the removed set and their
  // blossoms leave the family.
  void RemoveStructures(int32_t s, int32_t r);

  // Moves the working vertex two tree levels up, or clears it at the root.
  // Returns false if there was nothing to do.
  bool Backtrack(int32_t s);

  void SetOnHold(int32_t s, bool on_hold) { structures_[s].on_hold = on_hold; }
  void ClearModified(int32_t s) { structures_[s].modified = false; }

  // Even-length alternating path inside E_B from base(b) to x (base first).
  // The edge at the base is unmatched, the edge at x matched.
  std::vector<Vertex> EvenAlternatingPath(BlossomId b, Vertex x) const;

  // Lifts an alternating path of the contracted graph to G. `nodes` are root
  // blossoms N_0 ... N_L, `arcs[i]` the G arc joining N_i to N_{i+1}; N_0 and
  // N_L must be the roots of their trees.
  std::vector<Vertex> LiftPath(std::span<const BlossomId> nodes,
                               std::span<const Arc> arcs) const;

 private:
  void AppendPathToBase(BlossomId b, Vertex x, std::vector<Vertex>& out) const;
  void AppendEvenPath(BlossomId b, Vertex x, std::vector<Vertex>& out) const;
  int32_t ChildIndexContaining(BlossomId b, Vertex x) const;
  void CollectMembers(BlossomId b, std::vector<Vertex>& out) const;
  void CollectSubtree(BlossomId b, std::vector<BlossomId>& out) const;
  void DetachFromParent(BlossomId b);
  void AttachChild(BlossomId parent, BlossomId child, Arc arc);
  static void EraseArc(std::vector<Arc>& arcs, Arc a);

  const Matching* matching_;
  ArcLabelTable* labels_;
  RemovedSet* removed_;

  std::vector<BlossomId> root_of_;
  std::vector<int32_t> owner_;  // vertex -> structure index
  std::vector<Blossom> blossoms_;
  std::vector<TreeNode> nodes_;
  std::vector<Structure> structures_;
};

}  // namespace ssmatch

#endif  // SSMATCH_BLOSSOM_FOREST_H_
