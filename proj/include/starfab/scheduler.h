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

#include <cstddef>
#include <string>
#include <vector>

#include "starfab/circuit.h"
#include "starfab/fabric.h"
#include "starfab/topology.h"

namespace starfab {

// Gate and signaling durations. Switch toggling is folded into gate time.
struct Timing {
  Nanos t_1q = 20.0;
  Nanos t_2q = 200.0;
  Nanos t_signal = kDefaultSignalTime;

  Nanos duration(GateKind kind) const { return is_multi_qubit(kind) ? t_2q : t_1q; }
  bool operator==(const Timing&) const = default;
};

struct ScheduledGate {
  Gate gate;
  std::vector<RouterId> routers;  // empty for 1q, one for CZ/SWAP, two for CCZS
  std::size_t layer = 0;
  Nanos start = 0;
  Nanos end = 0;
};

struct Schedule {
  std::vector<std::vector<ScheduledGate>> layers;
  // Layers holding at least one multi-qubit gate.
  std::size_t depth = 0;

  Nanos makespan() const;
  std::size_t gate_count() const;
};

// Routers a schedule may use concurrently: one in single-active operation.
std::size_t router_capacity(const Topology& t, OperatingMode mode);

// True iff the operand sets are disjoint.
bool compatible(const Gate& a, const Gate& b);

// Greedy earliest-layer list scheduling with round-robin router assignment.
Schedule schedule(const Circuit& c, const Topology& t, OperatingMode mode = OperatingMode::kAllActive,
                  const Timing& timing = {});

struct DepthRatio {
  std::size_t numerator = 0;
  std::size_t denominator = 0;
  // 1.0 when both depths are zero.
  double value() const;
};

DepthRatio depth_ratio(const Circuit& c, const Topology& t1, const Topology& t2,
                       OperatingMode mode = OperatingMode::kAllActive);

enum class ViolationKind {
  kMissingGate,
  kDuplicateGate,
  kUnknownGate,
  kWrongLayer,
  kQubitConflict,
  kRouterOverCommitted,
  kRouterCount,
  kInvalidRouter,
  kDependencyOrder,
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::vector<Violation> validate_schedule(const Schedule& s, const Circuit& c, const Topology& t);

inline constexpr std::size_t kBruteForceGateLimit = 10;

// Exact minimum depth by breadth-first search over the sets of completed
// multi-qubit gates. Throws TooLarge above kBruteForceGateLimit gates.
std::size_t optimal_depth_bruteforce(const Circuit& c, const Topology& t,
                                     OperatingMode mode = OperatingMode::kAllActive);

// Delimited layer table: layer,gate,kind,qubits,routers,start_ns,end_ns.
std::string format_schedule_table(const Schedule& s, char delimiter = ',');

}  // namespace starfab
