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

#include "ssmatch/trace.h"

#include "json.hpp"

namespace ssmatch {

std::string FormatTraceEvent(const TraceEvent& event) {
  nlohmann::ordered_json j;
  j["bundle"] = event.bundle;
  j["op"] = event.op;
  j["structure"] = event.structure == kNone ? nlohmann::ordered_json()
                                            : nlohmann::ordered_json(event.structure);
  j["arc"] = event.arc.tail == kNone
                 ? nlohmann::ordered_json()
                 : nlohmann::ordered_json::array({event.arc.tail, event.arc.head});
  j["label_old"] = event.label_old == kNone ? nlohmann::ordered_json()
                                            : nlohmann::ordered_json(event.label_old);
  j["label_new"] = event.label_new == kNone ? nlohmann::ordered_json()
                                            : nlohmann::ordered_json(event.label_new);
  j["case"] = event.tag.empty() ? nlohmann::ordered_json()
                                : nlohmann::ordered_json(event.tag);
  return j.dump();
}

void JsonlTraceWriter::OnEvent(const TraceEvent& event) {
  *out_ << FormatTraceEvent(event) << '\n';
  ++records_;
}

}  // namespace ssmatch
