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

#ifndef SSMATCH_MATCHING_H_
#define SSMATCH_MATCHING_H_

#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ssmatch/edge_stream.h"
#include "ssmatch/types.h"

namespace ssmatch {

class Matching {
 public:
  Matching() = default;
  explicit Matching(int32_t n) : mate_(static_cast<size_t>(n), kNone) {}

  // Throws AlgorithmError if the pairs share a vertex.
  static Matching FromPairs(int32_t n,
                            std::span<const std::pair<Vertex, Vertex>> pairs);

  int32_t vertex_count() const { return static_cast<int32_t>(mate_.size()); }
  int64_t size() const { return size_; }

  Vertex mate(Vertex v) const { return mate_[v]; }
  bool IsFree(Vertex v) const { return mate_[v] == kNone; }
  bool IsMatched(Arc a) const { return mate_[a.tail] == a.head; }

  // Both endpoints must currently be free.
  void Match(Vertex u, Vertex v);

  // Matched edges as (u, v) with u < v, ascending by u.
  std::vector<Edge> Edges() const;

 private:
  friend void AugmentAlong(Matching&, std::span<const Vertex>, bool);

  std::vector<Vertex> mate_;
  int64_t size_ = 0;
};

// Builds a maximal matching in exactly one pass: an edge is taken iff both
// endpoints are still free when it arrives.
Matching GreedyMaximalMatching(EdgeStream& stream);

// Flips an augmenting path given as its vertex sequence
// (alpha, u_1, v_1, ..., u_k, v_k, beta), where (u_i, v_i) are matched.
// With `checked`, throws AlgorithmError unless the path is simple, alternates
// and has free endpoints; existence of the unmatched connectors in G is the
// caller's responsibility.
void AugmentAlong(Matching& matching, std::span<const Vertex> path,
                  bool checked = true);

// True iff every matched pair is an edge of `graph` and mates are symmetric.
bool ValidateMatching(const Matching& matching, const Graph& graph);

struct LabelEvent {
  Arc arc;
  int32_t old_label;
  int32_t new_label;
  int64_t bundle;
};

// Labels of matched arcs. The label of arc (v, mate(v)) is stored at v.
class ArcLabelTable {
 public:
  ArcLabelTable() = default;
  // Every matched arc starts at max_label + 1.
  ArcLabelTable(const Matching& matching, int32_t max_label);

  int32_t max_label() const { return max_label_; }

  int32_t Get(Arc a) const;
  // Returns the previous label. Records a reduction when the label drops.
  int32_t Set(Arc a, int32_t label);

  // Number of reductions applied to the arc with this tail.
  int32_t reductions(Vertex tail) const { return reductions_[tail]; }
  int32_t max_reductions() const { return max_reductions_; }

  void set_bundle(int64_t bundle) { bundle_ = bundle; }
  void set_log_events(bool enabled) { log_events_ = enabled; }
  const std::vector<LabelEvent>& events() const { return events_; }

 private:
  void CheckMatched(Arc a) const;

  const Matching* matching_ = nullptr;
  int32_t max_label_ = 0;
  std::vector<int32_t> label_;
  std::vector<int32_t> reductions_;
  int32_t max_reductions_ = 0;
  int64_t bundle_ = 0;
  bool log_events_ = false;
  std::vector<LabelEvent> events_;
};

// Vertices removed during the current phase.
class RemovedSet {
 public:
  explicit RemovedSet(int32_t n = 0) : flag_(static_cast<size_t>(n), 0) {}

  bool contains(Vertex v) const { return flag_[v] != 0; }
  void Add(Vertex v) {
    if (!flag_[v]) {
      flag_[v] = 1;
      members_.push_back(v);
    }
  }
  int64_t size() const { return static_cast<int64_t>(members_.size()); }
  std::span<const Vertex> members() const { return members_; }
  void Clear() {
    for (Vertex v : members_) flag_[v] = 0;
    members_.clear();
  }

 private:
  std::vector<uint8_t> flag_;
  std::vector<Vertex> members_;
};

}  // namespace ssmatch

#endif  // SSMATCH_MATCHING_H_
