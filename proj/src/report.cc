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

#include "ssmatch/report.h"

namespace ssmatch {

nlohmann::ordered_json ReportToJson(const RunReport& report,
                                    const EpsilonChoice& epsilon,
                                    std::span<const Violation> violations,
                                    const OracleOutcome& oracle) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["n"] = report.n;
  j["m"] = report.m;
  j["epsilon_requested"] = epsilon.requested;
  j["epsilon_effective"] = epsilon.effective();
  j["matching_size"] = report.matching.size();
  j["passes"] = report.passes;
  j["expected_passes"] = report.expected_passes;
  j["greedy_size"] = report.greedy_size;
  Json scales = Json::array();
  for (const ScaleReport& s : report.per_scale) {
    scales.push_back({{"h", "1/" + std::to_string(s.h_inv)},
                      {"phases", s.phases},
                      {"executed_phases", s.executed_phases},
                      {"augmentations", s.augmentations},
                      {"final_size", s.final_size},
                      {"passes", s.passes}});
  }
  j["per_scale"] = std::move(scales);
  j["stats"] = {{"overtakes", report.totals.overtakes},
                {"contracts", report.totals.contracts},
                {"augments", report.totals.augments},
                {"backtracks", report.totals.backtracks},
                {"holds", report.totals.holds},
                {"label_reductions", report.totals.label_reductions},
                {"max_structure_size", report.max_structure_size}};
  Json o = {{"mode", oracle.mode}};
  if (oracle.nu >= 0) {
    o["nu"] = oracle.nu;
    o["guarantee_met"] = oracle.guarantee_met;
  }
  j["oracle"] = std::move(o);
  Json list = Json::array();
  for (const Violation& v : violations) {
    Json entry = {{"invariant", v.invariant}, {"bundle", v.bundle}};
    entry["structure"] = v.structure == kNone ? Json() : Json(v.structure);
    entry["witness"] = v.witness;
    list.push_back(std::move(entry));
  }
  j["invariant_violations"] = std::move(list);
  return j;
}

void WriteMatching(const Matching& matching, std::ostream& out) {
  for (const Edge& e : matching.Edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace ssmatch
