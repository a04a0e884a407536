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

// Machine-readable output shared by the command-line tool and the tests.

#ifndef SSMATCH_REPORT_H_
#define SSMATCH_REPORT_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "ssmatch/invariant_checker.h"
#include "ssmatch/scale_driver.h"

namespace ssmatch {

struct OracleOutcome {
  std::string mode = "none";  // none, exhaustive or tutte
  int64_t nu = -1;
  bool guarantee_met = true;
};

// {n, m, epsilon_requested, epsilon_effective, matching_size, passes,
//  expected_passes, greedy_size, per_scale, stats, oracle,
//  invariant_violations}
nlohmann::ordered_json ReportToJson(const RunReport& report,
                                    const EpsilonChoice& epsilon,
                                    std::span<const Violation> violations,
                                    const OracleOutcome& oracle);

// One "u v" line per matched edge, u < v, ascending.
void WriteMatching(const Matching& matching, std::ostream& out);

}  // namespace ssmatch

#endif  // SSMATCH_REPORT_H_
