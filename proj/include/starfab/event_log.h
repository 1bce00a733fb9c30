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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "starfab/common.h"

namespace starfab {

// One fabric or execution transition. Serialized as one JSON object per line
// with the fixed key order t, kind, gate, router, qubits, detail; absent
// optionals are omitted.
struct EventRecord {
  Nanos t = 0;
  std::string kind;
  std::optional<std::size_t> gate;  // 0-based; rendered 1-based
  std::optional<RouterId> router;
  std::vector<QubitId> qubits;
  std::string detail;

  bool operator==(const EventRecord&) const = default;
};

class EventLog {
 public:
  void append(EventRecord record) { records_.push_back(std::move(record)); }
  const std::vector<EventRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  void clear() { records_.clear(); }

 private:
  std::vector<EventRecord> records_;
};

nlohmann::ordered_json to_json(const EventRecord& r);
std::string to_json_line(const EventRecord& r);
std::string to_json_lines(const std::vector<EventRecord>& records);

}  // namespace starfab
