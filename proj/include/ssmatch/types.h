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

#ifndef SSMATCH_TYPES_H_
#define SSMATCH_TYPES_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssmatch {

using Vertex = int32_t;
inline constexpr int32_t kNone = -1;

// Directed arc (tail, head). Each undirected edge {u, v} is seen by the
// algorithm as the two arcs (u, v) and (v, u).
struct Arc {
  Vertex tail = kNone;
  Vertex head = kNone;

  Arc Reversed() const { return {head, tail}; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = kNone;
  Vertex v = kNone;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Whole-graph view used by generators, oracles and the invariant checker.
// The streaming algorithm itself never sees one of these.
struct Graph {
  int32_t n = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<Vertex>> Adjacency() const;
};

// Raised when an input edge list or generator spec is invalid.
class GraphFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal precondition of the algorithm is violated. These
// indicate bugs, never bad input.
class AlgorithmError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ssmatch

#endif  // SSMATCH_TYPES_H_
