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

// Semi-streaming input: a replayable, pass-counted sequence of undirected
// edges, plus the generators and the plain-text edge-list format.

#ifndef SSMATCH_EDGE_STREAM_H_
#define SSMATCH_EDGE_STREAM_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssmatch/types.h"

namespace ssmatch {

enum class GraphKind {
  kEdgeListFile,
  kPath,
  kCycle,
  kComplete,
  kPetersen,
  kRandomGnm,
  kRandomBipartite,
};

// Describes where a graph comes from. `params` is kind-specific:
//   path/cycle/complete: {n}
//   random-gnm:          {n, m}
//   random-bipartite:    {left, right, m}
struct GraphSpec {
  GraphKind kind = GraphKind::kPath;
  std::vector<int64_t> params;
  uint64_t seed = 0;
  std::filesystem::path file;

  static GraphSpec Path(int64_t n) { return {GraphKind::kPath, {n}, 0, {}}; }
  static GraphSpec Cycle(int64_t n) { return {GraphKind::kCycle, {n}, 0, {}}; }
  static GraphSpec Complete(int64_t n) {
    return {GraphKind::kComplete, {n}, 0, {}};
  }
  static GraphSpec Petersen() { return {GraphKind::kPetersen, {}, 0, {}}; }
  static GraphSpec Gnm(int64_t n, int64_t m, uint64_t seed) {
    return {GraphKind::kRandomGnm, {n, m}, seed, {}};
  }
  static GraphSpec Bipartite(int64_t left, int64_t right, int64_t m,
                             uint64_t seed) {
    return {GraphKind::kRandomBipartite, {left, right, m}, seed, {}};
  }
  static GraphSpec File(std::filesystem::path path) {
    return {GraphKind::kEdgeListFile, {}, 0, std::move(path)};
  }

  // Human-readable `kind:params` form, the inverse of ParseGraphSpec.
  std::string ToString() const;
};

// Parses `path:4`, `cycle:5`, `complete:6`, `petersen`,
// `gnm:100,300,seed=7`, `bipartite:10,12,40,seed=3` or `file:<path>`.
GraphSpec ParseGraphSpec(std::string_view text);

// Materializes a generated graph, or loads and validates an edge-list file.
// Edges are normalized to u < v and kept in source order.
Graph BuildGraph(const GraphSpec& spec);

// Throws GraphFormatError on self-loops, duplicates or out-of-range ids.
void ValidateSimple(const Graph& graph);

// Writes "n m" followed by one "u v" line per edge (u < v), source order.
void WriteEdgeList(const Graph& graph, const std::filesystem::path& path);
std::string FormatEdgeList(const Graph& graph);

// Raised when a pass cannot be completed. The failed pass is not counted.
class StreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EdgeStream {
 public:
  // In-memory stream over an already validated edge sequence.
  static EdgeStream FromGraph(Graph graph);
  // File-backed stream; the file is validated once here and re-read on every
  // pass.
  static EdgeStream FromFile(const std::filesystem::path& path);

  int32_t vertex_count() const { return n_; }
  int64_t edge_count() const { return m_; }

  // Passes the algorithm is charged for: full reads plus passes credited by
  // AccountIdlePasses.
  int64_t pass_count() const { return reads_ + idle_passes_; }
  // Full reads actually performed.
  int64_t reads_performed() const { return reads_; }

  // Charges `count` passes whose outcome is known to be identical to a pass
  // sequence that already ran, without re-reading the input.
  void AccountIdlePasses(int64_t count);

  // One pass. For every stored edge {u, v} the visitor receives (u, v) and
  // then (v, u).
  template <typename Visitor>
  void ForEachArc(Visitor&& visitor) {
    if (!file_.empty()) {
      FileCursor cursor(file_, n_, m_);
      Edge e;
      while (cursor.Next(e)) {
        visitor(Arc{e.u, e.v});
        visitor(Arc{e.v, e.u});
      }
    } else {
      for (const Edge& e : edges_) {
        visitor(Arc{e.u, e.v});
        visitor(Arc{e.v, e.u});
      }
    }
    ++reads_;
  }

  // Out-of-band copy of the input for oracles and checkers. Not a pass.
  Graph Materialize() const;

 private:
  class FileCursor {
   public:
    FileCursor(const std::filesystem::path& path, int32_t n, int64_t m);
    ~FileCursor();
    FileCursor(const FileCursor&) = delete;
    FileCursor& operator=(const FileCursor&) = delete;
    bool Next(Edge& edge);

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
  };

  EdgeStream() = default;

  int32_t n_ = 0;
  int64_t m_ = 0;
  std::vector<Edge> edges_;
  std::filesystem::path file_;
  int64_t reads_ = 0;
  int64_t idle_passes_ = 0;
};

EdgeStream OpenStream(const GraphSpec& spec);

}  // namespace ssmatch

#endif  // SSMATCH_EDGE_STREAM_H_
