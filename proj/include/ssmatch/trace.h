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

// JSONL trace of engine events, one object per line with the keys
// bundle, op, structure, arc, label_old, label_new, case in that order.
// Keys that do not apply to an event are null.

#ifndef SSMATCH_TRACE_H_
#define SSMATCH_TRACE_H_

#include <ostream>
#include <string>

#include "ssmatch/phase_engine.h"

namespace ssmatch {

std::string FormatTraceEvent(const TraceEvent& event);

class JsonlTraceWriter : public PhaseMonitor {
 public:
  explicit JsonlTraceWriter(std::ostream& out) : out_(&out) {}
  void OnEvent(const TraceEvent& event) override;
  int64_t records() const { return records_; }

 private:
  std::ostream* out_;
  int64_t records_ = 0;
};

}  // namespace ssmatch

#endif  // SSMATCH_TRACE_H_
