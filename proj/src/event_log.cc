// Copyright 2026 The starfab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "starfab/event_log.h"

namespace starfab {

nlohmann::ordered_json to_json(const EventRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["kind"] = r.kind;
  if (r.gate) j["gate"] = *r.gate + 1;
  if (r.router) j["router"] = label(*r.router);
  if (!r.qubits.empty()) {
    auto& qs = j["qubits"] = nlohmann::ordered_json::array();
    for (QubitId q : r.qubits) qs.push_back(label(q));
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

std::string to_json_line(const EventRecord& r) { return to_json(r).dump(); }

std::string to_json_lines(const std::vector<EventRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

}  // namespace starfab
