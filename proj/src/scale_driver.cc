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

#include "ssmatch/scale_driver.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <string>

namespace ssmatch {
namespace {

constexpr int64_t kMaxEpsInv = int64_t{1} << 20;

// Parses a non-negative decimal such as "12" or "0.375" into num/den.
bool ParseDecimal(std::string_view text, int64_t& num, int64_t& den) {
  num = 0;
  den = 1;
  bool digits = false;
  bool point = false;
  for (char c : text) {
    if (c == '.' && !point) {
      point = true;
      continue;
    }
    if (c < '0' || c > '9') return false;
    digits = true;
    if (num > (std::numeric_limits<int64_t>::max() - 9) / 10 ||
        (point && den > std::numeric_limits<int64_t>::max() / 10)) {
      return false;
    }
    num = num * 10 + (c - '0');
    if (point) den *= 10;
  }
  return digits;
}

bool ParseInteger(std::string_view text, int64_t& value) {
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size() && value >= 0;
}

}  // namespace

EpsilonChoice ParseEpsilon(std::string_view text) {
  int64_t num = 0;
  int64_t den = 1;
  bool ok;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    ok = ParseInteger(text.substr(0, slash), num) &&
         ParseInteger(text.substr(slash + 1), den);
  } else {
    ok = ParseDecimal(text, num, den);
  }
  if (!ok || den == 0) {
    throw std::invalid_argument("cannot parse epsilon '" + std::string(text) +
                                "'");
  }
  if (num <= 0 || num > den) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  // Smallest power of two with 1/eps_inv <= num/den.
  int64_t eps_inv = 1;
  while (static_cast<__int128>(eps_inv) * num < den) {
    eps_inv *= 2;
    if (eps_inv > kMaxEpsInv) throw std::invalid_argument("epsilon too small");
  }
  return {std::string(text),
          static_cast<double>(num) / static_cast<double>(den), eps_inv};
}

std::vector<int64_t> ScaleSchedule(int64_t eps_inv) {
  std::vector<int64_t> out;
  for (int64_t h_inv = 2; h_inv <= 64 * eps_inv * eps_inv; h_inv *= 2) {
    out.push_back(h_inv);
  }
  return out;
}

int64_t ExpectedPassCount(int64_t eps_inv, int64_t reads_per_bundle) {
  __int128 total = 1;
  for (int64_t h_inv : ScaleSchedule(eps_inv)) {
    const ScaleParams p = MakeScaleParams(h_inv, eps_inv);
    total += static_cast<__int128>(reads_per_bundle) * p.phases * p.bundles;
    if (total > std::numeric_limits<int64_t>::max()) {
      throw std::overflow_error("pass count does not fit in 64 bits");
    }
  }
  return static_cast<int64_t>(total);
}

RunReport Run(EdgeStream& stream, const RunConfig& config,
              std::span<PhaseMonitor* const> monitors) {
  RunReport report;
  report.n = stream.vertex_count();
  report.m = stream.edge_count();
  report.eps_inv = config.eps_inv;
  report.expected_passes = ExpectedPassCount(config.eps_inv);

  const int64_t passes_before = stream.pass_count();
  Matching matching = GreedyMaximalMatching(stream);
  report.greedy_size = matching.size();

  // What the most recently simulated phase saw and did.
  struct LastPhase {
    bool valid = false;
    int64_t matching_version = -1;
    int64_t h_inv = 0;
    bool had_holds = true;
    int64_t quiesced_at = 0;
  } last;
  int64_t matching_version = 0;
  int64_t next_bundle = 1;

  std::vector<int64_t> schedule = ScaleSchedule(config.eps_inv);
  if (config.scale_limit > 0 &&
      config.scale_limit < static_cast<int64_t>(schedule.size())) {
    schedule.resize(static_cast<size_t>(config.scale_limit));
  }
  for (int64_t h_inv : schedule) {
    const ScaleParams params = MakeScaleParams(h_inv, config.eps_inv);
    if (params.size_limit * params.max_label > params.space_bound) {
      throw AlgorithmError("structure size bound exceeds the space budget");
    }
    ScaleReport scale;
    scale.h_inv = h_inv;
    const int64_t scale_passes_before = stream.pass_count();

    for (int64_t t = 1; t <= params.phases; ++t) {
      // A phase is a deterministic function of the matching, the label bound
      // and the hold threshold. If the matching has not moved since the last
      // simulated phase it replays that phase, provided the hold threshold
      // is the same or never mattered there.
      const bool replay =
          config.elide_repeats && last.valid &&
          last.matching_version == matching_version &&
          (last.h_inv == h_inv ||
           (!last.had_holds && last.quiesced_at != 0 &&
            last.quiesced_at <= params.bundles));
      ++scale.phases;
      if (replay) {
        stream.AccountIdlePasses(kReadsPerBundle * params.bundles);
        next_bundle += params.bundles;
        // The replayed phase found nothing, or the matching would have moved.
        if (config.early_exit_when_no_augmentation) break;
        continue;
      }

      PhaseConfig phase_config{params, next_bundle, config.elide_repeats,
                               config.fault};
      PhaseResult result = RunPhase(stream, matching, phase_config, monitors);
      next_bundle += params.bundles;
      ++scale.executed_phases;
      for (const auto& path : result.paths) AugmentAlong(matching, path);
      scale.augmentations += static_cast<int64_t>(result.paths.size());
      report.totals.overtakes += result.stats.overtakes;
      report.totals.contracts += result.stats.contracts;
      report.totals.augments += result.stats.augments;
      report.totals.backtracks += result.stats.backtracks;
      report.totals.holds += result.stats.holds;
      report.totals.label_reductions += result.stats.label_reductions;
      report.max_structure_size =
          std::max(report.max_structure_size, result.max_structure_size);

      last = {true, matching_version, h_inv, result.had_holds,
              result.quiesced_at};
      if (!result.paths.empty()) {
        ++matching_version;
      } else if (config.early_exit_when_no_augmentation) {
        break;
      }
    }

    scale.final_size = matching.size();
    scale.passes = stream.pass_count() - scale_passes_before;
    report.per_scale.push_back(scale);
    for (PhaseMonitor* m : monitors) m->OnScaleEnd(params, matching);
  }

  report.passes = stream.pass_count() - passes_before;
  report.matching = std::move(matching);
  return report;
}

}  // namespace ssmatch
