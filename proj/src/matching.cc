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

#include "ssmatch/matching.h"

#include <string>
#include <unordered_set>

namespace ssmatch {

Matching Matching::FromPairs(
    int32_t n, std::span<const std::pair<Vertex, Vertex>> pairs) {
  Matching m(n);
  for (const auto& [u, v] : pairs) m.Match(u, v);
  return m;
}

void Matching::Match(Vertex u, Vertex v) {
  if (u == v || mate_[u] != kNone || mate_[v] != kNone) {
    throw AlgorithmError("cannot match " + std::to_string(u) + " with " +
                         std::to_string(v));
  }
  mate_[u] = v;
  mate_[v] = u;
  ++size_;
}

std::vector<Edge> Matching::Edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(size_));
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (mate_[v] > v) out.push_back({v, mate_[v]});
  }
  return out;
}

Matching GreedyMaximalMatching(EdgeStream& stream) {
  Matching m(stream.vertex_count());
  stream.ForEachArc([&m](Arc a) {
    if (m.IsFree(a.tail) && m.IsFree(a.head)) m.Match(a.tail, a.head);
  });
  return m;
}

void AugmentAlong(Matching& matching, std::span<const Vertex> path,
                  bool checked) {
  const size_t len = path.size();
  if (checked) {
    auto fail = [](const std::string& why) {
      throw AlgorithmError("invalid augmenting path: " + why);
    };
    if (len < 2 || len % 2 != 0) fail("odd vertex count");
    std::unordered_set<Vertex> seen;
    for (Vertex v : path) {
      if (v < 0 || v >= matching.vertex_count()) fail("vertex out of range");
      if (!seen.insert(v).second) fail("repeated vertex");
    }
    if (!matching.IsFree(path.front()) || !matching.IsFree(path.back())) {
      fail("endpoint not free");
    }
    for (size_t i = 1; i + 1 < len; i += 2) {
      if (matching.mate(path[i]) != path[i + 1]) fail("not alternating");
    }
  }
  for (size_t i = 0; i + 1 < len; i += 2) {
    matching.mate_[path[i]] = path[i + 1];
    matching.mate_[path[i + 1]] = path[i];
  }
  ++matching.size_;
}

bool ValidateMatching(const Matching& matching, const Graph& graph) {
  if (matching.vertex_count() != graph.n) return false;
  std::unordered_set<int64_t> edges;
  edges.reserve(graph.edges.size() * 2);
  for (const Edge& e : graph.edges) {
    edges.insert(int64_t{std::min(e.u, e.v)} * graph.n + std::max(e.u, e.v));
  }
  int64_t matched = 0;
  for (Vertex v = 0; v < graph.n; ++v) {
    const Vertex w = matching.mate(v);
    if (w == kNone) continue;
    if (w < 0 || w >= graph.n || w == v || matching.mate(w) != v) return false;
    if (!edges.contains(int64_t{std::min(v, w)} * graph.n + std::max(v, w))) {
      return false;
    }
    ++matched;
  }
  return matched == 2 * matching.size();
}

ArcLabelTable::ArcLabelTable(const Matching& matching, int32_t max_label)
    : matching_(&matching),
      max_label_(max_label),
      label_(static_cast<size_t>(matching.vertex_count()), kNone),
      reductions_(static_cast<size_t>(matching.vertex_count()), 0) {
  for (Vertex v = 0; v < matching.vertex_count(); ++v) {
    if (!matching.IsFree(v)) label_[v] = max_label + 1;
  }
}

void ArcLabelTable::CheckMatched(Arc a) const {
  if (matching_ == nullptr || !matching_->IsMatched(a)) {
    throw AlgorithmError("label access on unmatched arc (" +
                         std::to_string(a.tail) + "," + std::to_string(a.head) +
                         ")");
  }
}

int32_t ArcLabelTable::Get(Arc a) const {
  CheckMatched(a);
  return label_[a.tail];
}

int32_t ArcLabelTable::Set(Arc a, int32_t label) {
  CheckMatched(a);
  const int32_t old = label_[a.tail];
  if (label < 0 || label > max_label_ + 1) {
    throw AlgorithmError("label out of range: " + std::to_string(label));
  }
  label_[a.tail] = label;
  if (label < old) {
    max_reductions_ = std::max(max_reductions_, ++reductions_[a.tail]);
    if (log_events_) events_.push_back({a, old, label, bundle_});
  }
  return old;
}

}  // namespace ssmatch
