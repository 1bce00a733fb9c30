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

#include "starfab/scheduler.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace starfab {

namespace {

void check_fits(const Circuit& c, const Topology& t, std::size_t capacity) {
  for (const Gate& g : c.gates()) {
    for (QubitId q : g.operands) {
      if (!t.contains(q)) {
        throw Error(ErrorCode::kOperandOutOfRange,
                    "gate " + std::to_string(g.id + 1) + " uses " + label(q) + " on a " +
                        std::to_string(t.n_qubits()) + "-qubit fabric");
      }
    }
    if (router_demand(g.kind) > capacity) {
      throw Error(ErrorCode::kInsufficientRouters,
                  std::string(gate_kind_name(g.kind)) + " (gate " + std::to_string(g.id + 1) +
                      ") needs " + std::to_string(router_demand(g.kind)) +
                      " concurrent routers, fabric offers " + std::to_string(capacity));
    }
  }
}

struct LayerUse {
  std::vector<bool> qubits;
  std::vector<bool> routers;
  std::size_t free_routers;
};

}  // namespace

Nanos Schedule::makespan() const {
  Nanos end = 0;
  for (const auto& layer : layers) {
    for (const auto& sg : layer) end = std::max(end, sg.end);
  }
  return end;
}

std::size_t Schedule::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.size();
  return n;
}

std::size_t router_capacity(const Topology& t, OperatingMode mode) {
  return mode == OperatingMode::kSingleActive ? 1 : t.n_routers();
}

bool compatible(const Gate& a, const Gate& b) {
  return std::none_of(a.operands.begin(), a.operands.end(),
                      [&](QubitId q) { return b.touches(q); });
}

Schedule schedule(const Circuit& c, const Topology& t, OperatingMode mode, const Timing& timing) {
  const std::size_t capacity = router_capacity(t, mode);
  check_fits(c, t, capacity);

  std::vector<LayerUse> use;
  Schedule s;
  // Layer after the last gate on each qubit; placement never goes below it.
  std::vector<std::size_t> frontier(t.n_qubits(), 0);
  std::size_t cursor = 0;

  for (const Gate& g : c.gates()) {
    const std::size_t demand = router_demand(g.kind);
    std::size_t layer = 0;
    for (QubitId q : g.operands) layer = std::max(layer, frontier[q.index]);

    while (true) {
      if (layer == use.size()) {
        use.push_back({std::vector<bool>(t.n_qubits(), false), std::vector<bool>(capacity, false),
                       capacity});
        s.layers.emplace_back();
      }
      const auto& u = use[layer];
      const bool qubits_free = std::none_of(g.operands.begin(), g.operands.end(),
                                            [&](QubitId q) { return u.qubits[q.index]; });
      if (qubits_free && u.free_routers >= demand) break;
      ++layer;
    }

    auto& u = use[layer];
    ScheduledGate sg{g, {}, layer, 0, 0};
    const std::size_t first = cursor;
    for (std::size_t k = 0; k < capacity && sg.routers.size() < demand; ++k) {
      const std::size_t r = (first + k) % capacity;
      if (u.routers[r]) continue;
      u.routers[r] = true;
      --u.free_routers;
      sg.routers.push_back(RouterId{static_cast<std::uint32_t>(r)});
      cursor = (r + 1) % capacity;
    }
    for (QubitId q : g.operands) {
      u.qubits[q.index] = true;
      frontier[q.index] = layer + 1;
    }
    s.layers[layer].push_back(std::move(sg));
  }

  Nanos start = 0;
  for (auto& layer : s.layers) {
    Nanos span = 0;
    bool multi = false;
    for (auto& sg : layer) {
      sg.start = start;
      sg.end = start + timing.duration(sg.gate.kind);
      span = std::max(span, sg.end - start);
      multi = multi || is_multi_qubit(sg.gate.kind);
    }
    if (multi) ++s.depth;
    start += span;
  }
  return s;
}

double DepthRatio::value() const {
  if (numerator == 0 && denominator == 0) return 1.0;
  if (denominator == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

DepthRatio depth_ratio(const Circuit& c, const Topology& t1, const Topology& t2,
                       OperatingMode mode) {
  return {schedule(c, t1, mode).depth, schedule(c, t2, mode).depth};
}

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMissingGate: return "MissingGate";
    case ViolationKind::kDuplicateGate: return "DuplicateGate";
    case ViolationKind::kUnknownGate: return "UnknownGate";
    case ViolationKind::kWrongLayer: return "WrongLayer";
    case ViolationKind::kQubitConflict: return "QubitConflict";
    case ViolationKind::kRouterOverCommitted: return "RouterOverCommitted";
    case ViolationKind::kRouterCount: return "RouterCount";
    case ViolationKind::kInvalidRouter: return "InvalidRouter";
    case ViolationKind::kDependencyOrder: return "DependencyOrder";
  }
  return "?";
}

std::vector<Violation> validate_schedule(const Schedule& s, const Circuit& c, const Topology& t) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind k, std::string detail) { out.push_back({k, std::move(detail)}); };
  auto gate_name = [](const Gate& g) {
    return "gate " + std::to_string(g.id + 1) + " (" + std::string(gate_kind_name(g.kind)) + ")";
  };

  std::vector<std::size_t> seen(c.size(), 0);
  std::vector<std::size_t> layer_of(c.size(), 0);

  for (std::size_t li = 0; li < s.layers.size(); ++li) {
    std::vector<bool> qubits(t.n_qubits(), false);
    std::vector<bool> routers(t.n_routers(), false);
    for (const ScheduledGate& sg : s.layers[li]) {
      const Gate& g = sg.gate;
      if (sg.layer != li) {
        report(ViolationKind::kWrongLayer, gate_name(g) + " tagged layer " +
                                               std::to_string(sg.layer) + " inside layer " +
                                               std::to_string(li));
      }
      if (g.id >= c.size() || !(c.gates()[g.id] == g)) {
        report(ViolationKind::kUnknownGate, gate_name(g) + " is not part of the circuit");
        continue;
      }
      if (++seen[g.id] > 1) report(ViolationKind::kDuplicateGate, gate_name(g) + " placed twice");
      layer_of[g.id] = li;

      for (QubitId q : g.operands) {
        if (!t.contains(q)) {
          report(ViolationKind::kQubitConflict, gate_name(g) + " uses missing " + label(q));
          continue;
        }
        if (qubits[q.index]) {
          report(ViolationKind::kQubitConflict,
                 label(q) + " used twice in layer " + std::to_string(li));
        }
        qubits[q.index] = true;
      }
      if (sg.routers.size() != router_demand(g.kind)) {
        report(ViolationKind::kRouterCount, gate_name(g) + " holds " +
                                                std::to_string(sg.routers.size()) +
                                                " router(s), needs " +
                                                std::to_string(router_demand(g.kind)));
      }
      for (RouterId r : sg.routers) {
        if (!t.contains(r)) {
          report(ViolationKind::kInvalidRouter, gate_name(g) + " assigned missing " + label(r));
          continue;
        }
        if (routers[r.index]) {
          report(ViolationKind::kRouterOverCommitted,
                 label(r) + " carries more than one pair in layer " + std::to_string(li));
        }
        routers[r.index] = true;
      }
    }
  }

  for (std::size_t id = 0; id < c.size(); ++id) {
    if (seen[id] == 0) report(ViolationKind::kMissingGate, gate_name(c.gates()[id]) + " missing");
  }

  // Gates on a common qubit must occupy strictly increasing layers in id order.
  for (std::uint32_t q = 0; q < t.n_qubits(); ++q) {
    std::optional<std::size_t> prev;
    for (const Gate& g : c.gates()) {
      if (!g.touches(QubitId{q}) || seen[g.id] == 0) continue;
      if (prev && layer_of[*prev] >= layer_of[g.id]) {
        report(ViolationKind::kDependencyOrder,
               gate_name(g) + " is not after gate " + std::to_string(*prev + 1) + " on " +
                   label(QubitId{q}));
      }
      prev = g.id;
    }
  }
  return out;
}

std::size_t optimal_depth_bruteforce(const Circuit& c, const Topology& t, OperatingMode mode) {
  if (c.size() > kBruteForceGateLimit) {
    throw Error(ErrorCode::kTooLarge, "exhaustive search is limited to " +
                                          std::to_string(kBruteForceGateLimit) + " gates, got " +
                                          std::to_string(c.size()));
  }
  const std::size_t capacity = router_capacity(t, mode);
  check_fits(c, t, capacity);

  std::vector<const Gate*> multi;
  for (const Gate& g : c.gates()) {
    if (is_multi_qubit(g.kind)) multi.push_back(&g);
  }
  const std::size_t n = multi.size();
  std::vector<std::uint32_t> preds(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!compatible(*multi[i], *multi[j])) preds[i] |= 1u << j;
    }
  }

  const std::uint32_t full = (1u << n) - 1;
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(full + 1, kUnseen);
  std::vector<std::uint32_t> frontier{0};
  dist[0] = 0;
  for (std::size_t level = 0; dist[full] == kUnseen; ++level) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t done : frontier) {
      std::uint32_t ready = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(done >> i & 1u) && (preds[i] & ~done) == 0) ready |= 1u << i;
      }
      // Every non-empty subset of the ready gates that fits the routers.
      for (std::uint32_t pick = ready; pick != 0; pick = (pick - 1) & ready) {
        std::size_t demand = 0;
        for (std::uint32_t rest = pick; rest; rest &= rest - 1) {
          demand += router_demand(multi[std::countr_zero(rest)]->kind);
        }
        if (demand > capacity) continue;
        const std::uint32_t after = done | pick;
        if (dist[after] == kUnseen) {
          dist[after] = level + 1;
          next.push_back(after);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist[full];
}

std::string format_schedule_table(const Schedule& s, char delimiter) {
  std::ostringstream out;
  out << "layer" << delimiter << "gate" << delimiter << "kind" << delimiter << "qubits"
      << delimiter << "routers" << delimiter << "start_ns" << delimiter << "end_ns\n";
  for (std::size_t li = 0; li < s.layers.size(); ++li) {
    for (const auto& sg : s.layers[li]) {
      out << li + 1 << delimiter << sg.gate.id + 1 << delimiter << gate_kind_name(sg.gate.kind)
          << delimiter;
      for (std::size_t i = 0; i < sg.gate.operands.size(); ++i) {
        out << (i ? " " : "") << label(sg.gate.operands[i]);
      }
      out << delimiter;
      for (std::size_t i = 0; i < sg.routers.size(); ++i) {
        out << (i ? " " : "") << label(sg.routers[i]);
      }
      out << delimiter << sg.start << delimiter << sg.end << '\n';
    }
  }
  return out.str();
}

}  // namespace starfab
