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

#include "starfab/failures.h"

#include <algorithm>
#include <cmath>

namespace starfab {

std::string describe(const FailureTarget& target) {
  if (const auto* r = std::get_if<RouterTarget>(&target)) return label(r->router);
  const auto& l = std::get<LinkTarget>(target);
  return label(l.qubit) + label(l.router);
}

RouterId target_router(const FailureTarget& target) {
  return std::visit([](const auto& t) { return t.router; }, target);
}

void validate(const FailureModel& model, const Topology& t) {
  std::vector<std::string> problems;
  if (!(model.rate >= 0.0) || !std::isfinite(model.rate)) {
    problems.push_back("failure rate must be a finite value >= 0");
  }
  if (!(model.horizon >= 0.0) || !std::isfinite(model.horizon)) {
    problems.push_back("failure horizon must be a finite value >= 0");
  }
  for (std::size_t i = 0; i < model.fixed.size(); ++i) {
    const auto& ev = model.fixed[i];
    if (!(ev.at >= 0.0)) problems.push_back("fixed event " + std::to_string(i + 1) + " has at < 0");
    if (i > 0 && ev.at < model.fixed[i - 1].at) {
      problems.push_back("fixed events must be time-sorted (event " + std::to_string(i + 1) + ")");
    }
    if (!t.contains(target_router(ev.target))) {
      problems.push_back("fixed event " + std::to_string(i + 1) + " targets missing router " +
                         label(target_router(ev.target)));
    }
    if (const auto* l = std::get_if<LinkTarget>(&ev.target); l && !t.contains(l->qubit)) {
      problems.push_back("fixed event " + std::to_string(i + 1) + " targets missing qubit " +
                         label(l->qubit));
    }
  }
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::kValidationError, msg);
  }
}

std::vector<FailureEvent> sample_failures(const FailureModel& model, const Topology& t, Rng& rng) {
  if (model.policy == TargetPolicy::kFixed) return model.fixed;

  std::vector<FailureEvent> events;
  if (model.rate <= 0.0 || model.horizon <= 0.0) return events;

  Nanos now = 0.0;
  while (true) {
    now += rng.exponential(model.rate);
    if (now >= model.horizon) break;
    FailureEvent ev{now, RouterTarget{}};
    if (model.policy == TargetPolicy::kUniformRouter) {
      ev.target = RouterTarget{RouterId{static_cast<std::uint32_t>(rng.uniform_index(t.n_routers()))}};
    } else {
      const Link& link = t.links()[rng.uniform_index(t.links().size())];
      ev.target = LinkTarget{link.qubit, link.router};
    }
    events.push_back(ev);
  }
  return events;
}

bool timeline_before(const TimelineEntry& a, const TimelineEntry& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.index < b.index;
}

std::vector<TimelineEntry> merge_into_timeline(std::span<const FailureEvent> failures,
                                               std::span<const GateWindow> windows) {
  std::vector<TimelineEntry> out;
  out.reserve(failures.size() + 2 * windows.size());
  for (std::size_t i = 0; i < failures.size(); ++i) {
    out.push_back({failures[i].at, TimelineKind::kFailure, i});
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out.push_back({windows[i].start, TimelineKind::kGateStart, i});
    out.push_back({windows[i].end, TimelineKind::kGateEnd, i});
  }
  std::stable_sort(out.begin(), out.end(), timeline_before);
  return out;
}

}  // namespace starfab
