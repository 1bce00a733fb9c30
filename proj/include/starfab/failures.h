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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "starfab/common.h"
#include "starfab/rng.h"
#include "starfab/topology.h"

namespace starfab {

struct RouterTarget {
  RouterId router;
  bool operator==(const RouterTarget&) const = default;
};

// A single severed qubit-router link.
struct LinkTarget {
  QubitId qubit;
  RouterId router;
  bool operator==(const LinkTarget&) const = default;
};

using FailureTarget = std::variant<RouterTarget, LinkTarget>;

struct FailureEvent {
  Nanos at = 0;
  FailureTarget target;
  bool operator==(const FailureEvent&) const = default;
};

std::string describe(const FailureTarget& target);
RouterId target_router(const FailureTarget& target);

enum class TargetPolicy { kUniformRouter, kUniformLink, kFixed };

struct FailureModel {
  double rate = 0.0;     // events per ns
  Nanos horizon = 0.0;   // events are drawn on [0, horizon)
  TargetPolicy policy = TargetPolicy::kUniformRouter;
  std::vector<FailureEvent> fixed;  // used verbatim under kFixed

  bool operator==(const FailureModel&) const = default;
};

// Throws ValidationError for negative rates, unsorted fixed lists, or targets
// outside the topology.
void validate(const FailureModel& model, const Topology& t);

// Homogeneous Poisson arrivals of `model.rate` on [0, horizon) with targets
// drawn per policy. The fixed policy returns the list verbatim and leaves the
// generator untouched.
std::vector<FailureEvent> sample_failures(const FailureModel& model, const Topology& t, Rng& rng);

// Ordering of simultaneous timeline entries: a gate ending at t completes
// before a failure at t, and a failure at t lands before any gate starting at t.
enum class TimelineKind { kGateEnd = 0, kFailure = 1, kFailoverReady = 2, kGateStart = 3 };

struct GateWindow {
  std::size_t gate = 0;
  Nanos start = 0;
  Nanos end = 0;
};

struct TimelineEntry {
  Nanos t = 0;
  TimelineKind kind = TimelineKind::kFailure;
  std::size_t index = 0;  // into the failure list or the window list

  bool operator==(const TimelineEntry&) const = default;
};

bool timeline_before(const TimelineEntry& a, const TimelineEntry& b);

std::vector<TimelineEntry> merge_into_timeline(std::span<const FailureEvent> failures,
                                               std::span<const GateWindow> windows);

}  // namespace starfab
