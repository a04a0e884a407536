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

#include "ssmatch/phase_engine.h"

#include <algorithm>
#include <stdexcept>

namespace ssmatch {
namespace {

bool IsPowerOfTwo(int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

class PhaseRunner {
 public:
  PhaseRunner(EdgeStream& stream, const Matching& matching,
              const PhaseConfig& config, std::span<PhaseMonitor* const> monitors)
      : stream_(stream),
        matching_(matching),
        config_(config),
        params_(config.params),
        monitors_(monitors),
        labels_(matching, config.params.max_label),
        removed_(matching.vertex_count()),
        forest_(matching, labels_, removed_) {}

  PhaseResult Run() {
    const int64_t passes_before = stream_.pass_count();
    for (Vertex v = 0; v < matching_.vertex_count(); ++v) {
      if (matching_.IsFree(v)) forest_.InitStructure(v);
    }
    const PhaseContext context{&params_, &matching_, config_.first_bundle};
    for (PhaseMonitor* m : monitors_) m->OnPhaseStart(forest_, context);

    for (int64_t tau = 1; tau <= params_.bundles; ++tau) {
      bundle_ = config_.first_bundle + tau - 1;
      labels_.set_bundle(bundle_);
      for (PhaseMonitor* m : monitors_) m->OnBundleStart(forest_, bundle_);
      changed_ = false;
      Mark();
      ExtendActivePaths();
      ContractAndAugment();
      BacktrackStuckStructures();
      ++result_.executed_bundles;
      if (!changed_) {
        result_.quiesced_at = tau;
        if (config_.skip_quiescent) {
          stream_.AccountIdlePasses((params_.bundles - tau) * kReadsPerBundle);
          break;
        }
      }
    }

    for (const Structure& s : forest_.structures()) {
      if (s.active()) ++result_.active_at_end;
    }
    result_.stream_reads = stream_.pass_count() - passes_before;
    for (PhaseMonitor* m : monitors_) m->OnPhaseEnd(forest_, result_);
    return std::move(result_);
  }

 private:
  void Emit(TraceEvent event) {
    event.bundle = bundle_;
    for (PhaseMonitor* m : monitors_) m->OnEvent(event);
  }

  void Touched(std::initializer_list<int32_t> structures) {
    for (int32_t s : structures) {
      result_.max_structure_size =
          std::max(result_.max_structure_size, forest_.structure(s).size());
    }
    const std::vector<int32_t> list(structures);
    for (PhaseMonitor* m : monitors_) m->AfterOperation(forest_, list);
  }

  Vertex AlphaOf(int32_t s) const { return forest_.structure(s).alpha; }

  void Mark() {
    for (int32_t s = 0; s < forest_.structure_count(); ++s) {
      const Structure& st = forest_.structure(s);
      if (!st.live) continue;
      const bool hold = st.size() >= params_.size_limit;
      if (hold != st.on_hold) {
        forest_.SetOnHold(s, hold);
        changed_ = true;
        if (hold) {
          ++result_.stats.holds;
          result_.had_holds = true;
        }
        Emit({.op = "hold",
              .structure = st.alpha,
              .tag = hold ? "on" : "off"});
      }
      forest_.ClearModified(s);
    }
  }

  void Augment(Arc g) {
    const int32_t s = forest_.OwnerOf(forest_.Resolve(g.tail));
    const int32_t r = forest_.OwnerOf(forest_.Resolve(g.head));
    std::vector<Vertex> path = forest_.AugmentingPath(g);
    if (config_.fault != Fault::kDropAugmentations) {
      result_.paths.push_back(std::move(path));
    }
    forest_.RemoveStructures(s, r);
    ++result_.stats.augments;
    changed_ = true;
    Emit({.op = "augment", .structure = AlphaOf(s), .arc = g});
    Touched({s, r});
  }

  void Contract(int32_t s, Arc g) {
    forest_.Contract(g);
    ++result_.stats.contracts;
    changed_ = true;
    Emit({.op = "contract", .structure = AlphaOf(s), .arc = g,
          .tag = "blossom"});
    Touched({s});
  }

  void ExtendActivePaths() {
    stream_.ForEachArc([this](Arc g) {
      if (removed_.contains(g.tail) || removed_.contains(g.head)) return;
      const BlossomId ub = forest_.Resolve(g.tail);
      const BlossomId vb = forest_.Resolve(g.head);
      if (ub == vb || !forest_.IsWorking(ub) || matching_.IsMatched(g)) return;
      const int32_t s = forest_.OwnerOf(ub);
      const Structure& st = forest_.structure(s);
      if (st.modified || st.on_hold) return;

      if (forest_.IsOuter(vb)) {
        if (forest_.OwnerOf(vb) == s) {
          Contract(s, g);
        } else {
          Augment(g);
        }
        return;
      }
      const Vertex t = matching_.mate(g.head);
      if (t == kNone) return;
      const Arc a{g.head, t};
      const int32_t k = forest_.Distance(g.tail) + 1;
      const int32_t old_label = labels_.Get(a);
      if (k >= old_label) return;
      const int32_t previous_owner = forest_.OwnerOf(vb);
      const OvertakeCase c = forest_.Overtake(g, a, k);
      if (config_.fault == Fault::kCorruptLabels && k >= 2) labels_.Set(a, 0);
      ++result_.stats.overtakes;
      ++result_.stats.label_reductions;
      changed_ = true;
      Emit({.op = "overtake", .structure = st.alpha, .arc = a,
            .label_old = old_label, .label_new = labels_.Get(a),
            .tag = OvertakeCaseName(c)});
      if (previous_owner != kNone && previous_owner != s) {
        Touched({s, previous_owner});
      } else {
        Touched({s});
      }
    });
  }

  void ContractAndAugment() {
    // Step 1: collect the arcs inside each structure, then contract from the
    // working vertex until no such arc leads to another outer vertex.
    std::vector<std::vector<Arc>> inside(
        static_cast<size_t>(forest_.structure_count()));
    stream_.ForEachArc([this, &inside](Arc g) {
      const int32_t s = forest_.OwnerOfVertex(g.tail);
      if (s == kNone || forest_.OwnerOfVertex(g.head) != s) return;
      if (matching_.IsMatched(g)) return;
      inside[s].push_back(g);
    });
    for (int32_t s = 0; s < forest_.structure_count(); ++s) {
      auto& arcs = inside[s];
      while (forest_.structure(s).active()) {
        const BlossomId working = forest_.structure(s).working;
        std::erase_if(arcs, [this](Arc g) {
          return forest_.Resolve(g.tail) == forest_.Resolve(g.head);
        });
        auto it = std::find_if(arcs.begin(), arcs.end(), [&](Arc g) {
          return forest_.Resolve(g.tail) == working &&
                 forest_.IsOuter(forest_.Resolve(g.head));
        });
        if (it == arcs.end()) break;
        const Arc g = *it;
        Contract(s, g);
      }
    }

    // Step 2: augment across outer-outer arcs joining different structures.
    stream_.ForEachArc([this](Arc g) {
      if (config_.fault == Fault::kSkipAugmentScan) return;
      if (removed_.contains(g.tail) || removed_.contains(g.head)) return;
      const BlossomId ub = forest_.Resolve(g.tail);
      const BlossomId vb = forest_.Resolve(g.head);
      if (ub == vb || !forest_.IsOuter(ub) || !forest_.IsOuter(vb)) return;
      if (forest_.OwnerOf(ub) == forest_.OwnerOf(vb)) return;
      Augment(g);
    });
  }

  void BacktrackStuckStructures() {
    for (int32_t s = 0; s < forest_.structure_count(); ++s) {
      const Structure& st = forest_.structure(s);
      if (!st.active() || st.on_hold || st.modified) continue;
      const bool at_root = st.working == st.root;
      forest_.Backtrack(s);
      ++result_.stats.backtracks;
      changed_ = true;
      Emit({.op = "backtrack",
            .structure = st.alpha,
            .tag = at_root ? "inactive" : "parent"});
    }
  }

  EdgeStream& stream_;
  const Matching& matching_;
  const PhaseConfig& config_;
  const ScaleParams params_;
  std::span<PhaseMonitor* const> monitors_;
  ArcLabelTable labels_;
  RemovedSet removed_;
  StructureForest forest_;
  PhaseResult result_;
  int64_t bundle_ = 0;
  bool changed_ = false;
};

}  // namespace

ScaleParams MakeScaleParams(int64_t h_inv, int64_t eps_inv) {
  if (!IsPowerOfTwo(eps_inv) || !IsPowerOfTwo(h_inv) || h_inv < 2) {
    throw std::invalid_argument("1/h and 1/eps must be powers of two, h <= 1/2");
  }
  if (eps_inv > (int64_t{1} << 20) || h_inv > (int64_t{1} << 40)) {
    throw std::invalid_argument("parameters out of supported range");
  }
  ScaleParams p;
  p.eps_inv = eps_inv;
  p.h_inv = h_inv;
  p.max_label = static_cast<int32_t>(3 * eps_inv);
  p.size_limit = 6 * h_inv + 1;
  p.bundles = 72 * h_inv * eps_inv;
  p.phases = 144 * h_inv * eps_inv;
  p.space_bound = 36 * h_inv * eps_inv;
  return p;
}

PhaseResult RunPhase(EdgeStream& stream, const Matching& matching,
                     const PhaseConfig& config,
                     std::span<PhaseMonitor* const> monitors) {
  if (stream.vertex_count() != matching.vertex_count()) {
    throw std::invalid_argument("matching does not fit the stream");
  }
  PhaseRunner runner(stream, matching, config, monitors);
  return runner.Run();
}

}  // namespace ssmatch
