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

#include "ssmatch/edge_stream.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace ssmatch {
namespace {

constexpr int64_t kMaxVertices = int64_t{1} << 30;

Edge Normalized(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Uniform integer in [0, bound) with a platform-independent mapping, so a
// (kind, params, seed) triple always produces the same edge sequence.
uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

bool ParseInt(std::string_view text, int64_t& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Splits a line into whitespace-separated integer fields.
bool ParseLine(const std::string& line, std::vector<int64_t>& fields) {
  fields.clear();
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    int64_t value;
    if (!ParseInt(token, value)) return false;
    fields.push_back(value);
  }
  return true;
}

void CheckVertexCount(int64_t n) {
  if (n < 0 || n > kMaxVertices) {
    throw GraphFormatError("vertex count out of range: " + std::to_string(n));
  }
}

Graph GeneratePath(int64_t n) {
  CheckVertexCount(n);
  Graph g{static_cast<int32_t>(n), {}};
  for (int32_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

Graph GenerateCycle(int64_t n) {
  CheckVertexCount(n);
  if (n < 3) throw GraphFormatError("cycle needs at least 3 vertices");
  Graph g = GeneratePath(n);
  g.edges.push_back(Normalized(static_cast<Vertex>(n - 1), 0));
  return g;
}

Graph GenerateComplete(int64_t n) {
  CheckVertexCount(n);
  Graph g{static_cast<int32_t>(n), {}};
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  }
  return g;
}

Graph GeneratePetersen() {
  Graph g{10, {}};
  for (int32_t i = 0; i < 5; ++i) g.edges.push_back(Normalized(i, (i + 1) % 5));
  for (int32_t i = 0; i < 5; ++i) g.edges.push_back({i, i + 5});
  for (int32_t i = 0; i < 5; ++i) {
    g.edges.push_back(Normalized(5 + i, 5 + (i + 2) % 5));
  }
  return g;
}

// Draws `m` distinct pairs from `pair_count` candidates indexed by `decode`.
template <typename Decode>
std::vector<Edge> SampleDistinct(int64_t pair_count, int64_t m, uint64_t seed,
                                 Decode decode) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m));
  if (2 * m > pair_count) {
    std::vector<int64_t> ids(static_cast<size_t>(pair_count));
    for (int64_t i = 0; i < pair_count; ++i) ids[i] = i;
    for (int64_t i = 0; i < m; ++i) {
      const int64_t j =
          i + static_cast<int64_t>(UniformBelow(rng, pair_count - i));
      std::swap(ids[i], ids[j]);
      edges.push_back(decode(ids[i]));
    }
    return edges;
  }
  std::unordered_set<int64_t> seen;
  while (static_cast<int64_t>(edges.size()) < m) {
    const int64_t id = static_cast<int64_t>(UniformBelow(rng, pair_count));
    if (seen.insert(id).second) edges.push_back(decode(id));
  }
  return edges;
}

Graph GenerateGnm(int64_t n, int64_t m, uint64_t seed) {
  CheckVertexCount(n);
  const int64_t pairs = n * (n - 1) / 2;
  if (m < 0 || m > pairs) {
    throw GraphFormatError("gnm: m must be in [0, n(n-1)/2]");
  }
  Graph g{static_cast<int32_t>(n), {}};
  // Pair ids enumerate the upper triangle row by row.
  g.edges = SampleDistinct(pairs, m, seed, [n](int64_t id) {
    int64_t u = 0;
    int64_t row = n - 1;
    while (id >= row) {
      id -= row;
      ++u;
      --row;
    }
    return Edge{static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + id)};
  });
  return g;
}

Graph GenerateBipartite(int64_t left, int64_t right, int64_t m, uint64_t seed) {
  CheckVertexCount(left + right);
  if (left < 0 || right < 0 || m < 0 || m > left * right) {
    throw GraphFormatError("bipartite: m must be in [0, left*right]");
  }
  Graph g{static_cast<int32_t>(left + right), {}};
  g.edges = SampleDistinct(left * right, m, seed, [left, right](int64_t id) {
    return Edge{static_cast<Vertex>(id / right),
                static_cast<Vertex>(left + id % right)};
  });
  return g;
}

Graph ParseEdgeList(std::istream& in, const std::string& origin) {
  std::string line;
  std::vector<int64_t> fields;
  auto fail = [&](const std::string& what) {
    throw GraphFormatError(origin + ": " + what);
  };
  if (!std::getline(in, line) || !ParseLine(line, fields) ||
      fields.size() != 2) {
    fail("expected header line \"n m\"");
  }
  CheckVertexCount(fields[0]);
  const int64_t m = fields[1];
  if (m < 0) fail("negative edge count");
  Graph g{static_cast<int32_t>(fields[0]), {}};
  while (std::getline(in, line)) {
    if (!ParseLine(line, fields)) fail("malformed line: " + line);
    if (fields.empty()) continue;
    if (fields.size() != 2) fail("malformed line: " + line);
    if (fields[0] < 0 || fields[0] >= g.n || fields[1] < 0 ||
        fields[1] >= g.n) {
      fail("vertex out of range: " + line);
    }
    g.edges.push_back(Normalized(static_cast<Vertex>(fields[0]),
                                 static_cast<Vertex>(fields[1])));
  }
  if (static_cast<int64_t>(g.edges.size()) != m) {
    fail("header declares " + std::to_string(m) + " edges, found " +
         std::to_string(g.edges.size()));
  }
  ValidateSimple(g);
  return g;
}

}  // namespace

std::vector<std::vector<Vertex>> Graph::Adjacency() const {
  std::vector<std::vector<Vertex>> adj(static_cast<size_t>(n));
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

std::string GraphSpec::ToString() const {
  auto join = [this]() {
    std::string s;
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(params[i]);
    }
    return s;
  };
  switch (kind) {
    case GraphKind::kEdgeListFile:
      return "file:" + file.string();
    case GraphKind::kPath:
      return "path:" + join();
    case GraphKind::kCycle:
      return "cycle:" + join();
    case GraphKind::kComplete:
      return "complete:" + join();
    case GraphKind::kPetersen:
      return "petersen";
    case GraphKind::kRandomGnm:
      return "gnm:" + join() + ",seed=" + std::to_string(seed);
    case GraphKind::kRandomBipartite:
      return "bipartite:" + join() + ",seed=" + std::to_string(seed);
  }
  return "unknown";
}

GraphSpec ParseGraphSpec(std::string_view text) {
  const size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto fail = [&](const std::string& why) -> GraphSpec {
    throw GraphFormatError("bad graph spec '" + std::string(text) + "': " + why);
  };

  if (kind == "file") {
    if (rest.empty()) return fail("missing path");
    return GraphSpec::File(std::string(rest));
  }

  GraphSpec spec;
  size_t expected = 0;
  bool seeded = false;
  if (kind == "path") {
    spec.kind = GraphKind::kPath;
    expected = 1;
  } else if (kind == "cycle") {
    spec.kind = GraphKind::kCycle;
    expected = 1;
  } else if (kind == "complete") {
    spec.kind = GraphKind::kComplete;
    expected = 1;
  } else if (kind == "petersen") {
    spec.kind = GraphKind::kPetersen;
  } else if (kind == "gnm") {
    spec.kind = GraphKind::kRandomGnm;
    expected = 2;
    seeded = true;
  } else if (kind == "bipartite") {
    spec.kind = GraphKind::kRandomBipartite;
    expected = 3;
    seeded = true;
  } else {
    return fail("unknown kind");
  }

  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    if (comma == std::string_view::npos) comma = rest.size();
    std::string_view field = rest.substr(pos, comma - pos);
    pos = comma + 1;
    int64_t value;
    if (field.starts_with("seed=")) {
      if (!seeded) return fail("seed not accepted");
      if (!ParseInt(field.substr(5), value) || value < 0) {
        return fail("bad seed");
      }
      spec.seed = static_cast<uint64_t>(value);
      continue;
    }
    if (!ParseInt(field, value)) return fail("bad number");
    spec.params.push_back(value);
  }
  if (spec.params.size() != expected) return fail("wrong parameter count");
  return spec;
}

Graph BuildGraph(const GraphSpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case GraphKind::kEdgeListFile: {
      std::ifstream in(spec.file);
      if (!in) throw GraphFormatError("cannot open " + spec.file.string());
      return ParseEdgeList(in, spec.file.string());
    }
    case GraphKind::kPath:
      return GeneratePath(p.at(0));
    case GraphKind::kCycle:
      return GenerateCycle(p.at(0));
    case GraphKind::kComplete:
      return GenerateComplete(p.at(0));
    case GraphKind::kPetersen:
      return GeneratePetersen();
    case GraphKind::kRandomGnm:
      return GenerateGnm(p.at(0), p.at(1), spec.seed);
    case GraphKind::kRandomBipartite:
      return GenerateBipartite(p.at(0), p.at(1), p.at(2), spec.seed);
  }
  throw GraphFormatError("unknown graph kind");
}

void ValidateSimple(const Graph& graph) {
  std::unordered_set<int64_t> seen;
  seen.reserve(graph.edges.size() * 2);
  for (const Edge& e : graph.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= graph.n || e.v >= graph.n) {
      throw GraphFormatError("vertex out of range in edge " +
                             std::to_string(e.u) + " " + std::to_string(e.v));
    }
    if (e.u == e.v) {
      throw GraphFormatError("self-loop at vertex " + std::to_string(e.u));
    }
    const Edge k = Normalized(e.u, e.v);
    if (!seen.insert(int64_t{k.u} * graph.n + k.v).second) {
      throw GraphFormatError("duplicate edge " + std::to_string(k.u) + " " +
                             std::to_string(k.v));
    }
  }
}

std::string FormatEdgeList(const Graph& graph) {
  std::string out;
  out += std::to_string(graph.n) + " " + std::to_string(graph.edges.size()) +
         "\n";
  for (const Edge& e : graph.edges) {
    const Edge k = Normalized(e.u, e.v);
    out += std::to_string(k.u) + " " + std::to_string(k.v) + "\n";
  }
  return out;
}

void WriteEdgeList(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << FormatEdgeList(graph);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// --- EdgeStream ------------------------------------------------------------

struct EdgeStream::FileCursor::Impl {
  std::ifstream in;
  std::filesystem::path path;
  int32_t n;
  int64_t remaining;
  std::string line;
  std::vector<int64_t> fields;
};

EdgeStream::FileCursor::FileCursor(const std::filesystem::path& path, int32_t n,
                                   int64_t m)
    : impl_(std::make_unique<Impl>()) {
  impl_->in.open(path);
  impl_->path = path;
  impl_->n = n;
  impl_->remaining = m;
  if (!impl_->in || !std::getline(impl_->in, impl_->line)) {
    throw StreamError("cannot read " + path.string());
  }
}

EdgeStream::FileCursor::~FileCursor() = default;

bool EdgeStream::FileCursor::Next(Edge& edge) {
  Impl& s = *impl_;
  while (std::getline(s.in, s.line)) {
    if (!ParseLine(s.line, s.fields)) {
      throw StreamError(s.path.string() + ": malformed line mid-pass");
    }
    if (s.fields.empty()) continue;
    if (s.fields.size() != 2 || s.remaining == 0 || s.fields[0] < 0 ||
        s.fields[1] < 0 || s.fields[0] >= s.n || s.fields[1] >= s.n) {
      throw StreamError(s.path.string() + ": input changed mid-pass");
    }
    --s.remaining;
    edge = Normalized(static_cast<Vertex>(s.fields[0]),
                      static_cast<Vertex>(s.fields[1]));
    return true;
  }
  if (s.remaining != 0 || s.in.bad()) {
    throw StreamError(s.path.string() + ": truncated mid-pass");
  }
  return false;
}

EdgeStream EdgeStream::FromGraph(Graph graph) {
  ValidateSimple(graph);
  EdgeStream s;
  s.n_ = graph.n;
  s.m_ = static_cast<int64_t>(graph.edges.size());
  s.edges_ = std::move(graph.edges);
  for (Edge& e : s.edges_) e = Normalized(e.u, e.v);
  return s;
}

EdgeStream EdgeStream::FromFile(const std::filesystem::path& path) {
  const Graph g = BuildGraph(GraphSpec::File(path));
  EdgeStream s;
  s.n_ = g.n;
  s.m_ = static_cast<int64_t>(g.edges.size());
  s.file_ = path;
  return s;
}

void EdgeStream::AccountIdlePasses(int64_t count) {
  if (count < 0) throw std::invalid_argument("negative idle pass count");
  idle_passes_ += count;
}

Graph EdgeStream::Materialize() const {
  if (!file_.empty()) return BuildGraph(GraphSpec::File(file_));
  return Graph{n_, edges_};
}

EdgeStream OpenStream(const GraphSpec& spec) {
  if (spec.kind == GraphKind::kEdgeListFile) return EdgeStream::FromFile(spec.file);
  return EdgeStream::FromGraph(BuildGraph(spec));
}

}  // namespace ssmatch
