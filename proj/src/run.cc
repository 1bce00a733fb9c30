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

#include "starfab/run.h"

#include <algorithm>
#include <limits>
#include <optional>

namespace starfab {

std::string_view incomplete_reason_name(IncompleteReason reason) {
  switch (reason) {
    case IncompleteReason::kNone: return "None";
    case IncompleteReason::kNoBackupAvailable: return "NoBackupAvailable";
    case IncompleteReason::kNoRouteAvailable: return "NoRouteAvailable";
  }
  return "?";
}

namespace {

constexpr Nanos kNever = std::numeric_limits<Nanos>::infinity();

struct InFlight {
  const ScheduledGate* sg;
  Nanos end;
  std::vector<Reservation> reservations;
};

// Pairs a multi-qubit gate needs, one per router: (a, b) for CZ/SWAP and
// (control, target1), (control, target2) for CCZS.
std::vector<std::pair<QubitId, QubitId>> router_pairs(const Gate& g) {
  if (router_demand(g.kind) == 1) return {{g.operands[0], g.operands[1]}};
  return {{g.operands[0], g.operands[1]}, {g.operands[0], g.operands[2]}};
}

class Executor {
 public:
  Executor(std::size_t n_qubits, FabricState fabric, std::span<const FailureEvent> failures,
           const RunOptions& options)
      : fabric_(std::move(fabric)), failures_(failures), options_(options) {
    result_.final_state = StateVector(n_qubits);
  }

  RunResult execute(const Schedule& s, Rng& noise_rng) {
    result_.complete = true;
    for (const auto& layer : s.layers) {
      if (!run_layer(layer)) break;
    }
    if (result_.complete) {
      emit("run_complete", std::nullopt, {});
    } else {
      emit("run_incomplete", std::nullopt, {}, std::nullopt,
           std::string(incomplete_reason_name(result_.reason)));
    }
    result_.makespan = now_;
    result_.analytic_fidelity = analytic_fidelity(result_.executed, options_.fidelity);
    const bool drawn = sample_success(result_.analytic_fidelity, noise_rng);
    result_.success = result_.complete && drawn;
    result_.trace = fabric_.log().records();
    return std::move(result_);
  }

 private:
  void emit(std::string kind, std::optional<RouterId> r, std::vector<QubitId> qubits,
            std::optional<std::size_t> gate = std::nullopt, std::string detail = {}) {
    fabric_.log().append({now_, std::move(kind), gate, r, std::move(qubits), std::move(detail)});
  }

  void check() const {
    if (!options_.check_invariants) return;
    const auto problems = fabric_.check_invariants();
    if (!problems.empty()) {
      throw Error(ErrorCode::kInvariantViolation,
                  "t=" + std::to_string(now_) + ": " + problems.front());
    }
  }

  // Returns false when the run cannot finish.
  bool run_layer(const std::vector<ScheduledGate>& layer) {
    pending_.clear();
    for (const auto& sg : layer) pending_.push_back(&sg);
    in_flight_.clear();
    std::vector<const ScheduledGate*> done;

    while (true) {
      fabric_.advance_to(now_);
      finish_gates(done);
      apply_failures();
      dispatch();
      check();
      if (pending_.empty() && in_flight_.empty()) break;

      const Nanos next = next_event_time();
      if (in_flight_.empty() && next_ready() == kNever) {
        if (!pending_.empty() && !escalate()) {
          commit(done);
          result_.complete = false;
          return false;
        }
        continue;
      }
      now_ = next;
    }
    commit(done);
    result_.complete = true;
    return true;
  }

  // Layer unitaries go in schedule order so retries cannot reorder them.
  void commit(std::vector<const ScheduledGate*>& done) {
    std::sort(done.begin(), done.end());
    for (const ScheduledGate* sg : done) {
      apply_gate(result_.final_state, sg->gate);
      result_.executed.push_back(sg->gate);
    }
    done.clear();
  }

  void finish_gates(std::vector<const ScheduledGate*>& done) {
    for (auto it = in_flight_.begin(); it != in_flight_.end();) {
      if (it->end > now_) {
        ++it;
        continue;
      }
      for (const auto& res : it->reservations) fabric_.release(res);
      emit("gate_end", std::nullopt, it->sg->gate.operands, it->sg->gate.id);
      done.push_back(it->sg);
      it = in_flight_.erase(it);
    }
  }

  void apply_failures() {
    while (next_failure_ < failures_.size() && failures_[next_failure_].at <= now_) {
      const FailureEvent& ev = failures_[next_failure_++];
      const RouterId r = target_router(ev.target);
      const bool router_hit = std::holds_alternative<RouterTarget>(ev.target);
      const bool was_active = fabric_.router_mode(r) == RouterMode::kActive;
      ++result_.failures_applied;
      for (std::size_t gate_id : fabric_.apply_failure(ev.target)) abort_gate(gate_id);
      if (router_hit && was_active && fabric_.operating_mode() == OperatingMode::kSingleActive) {
        try_failover();
      }
    }
  }

  void abort_gate(std::size_t gate_id) {
    const auto it = std::find_if(in_flight_.begin(), in_flight_.end(),
                                 [&](const InFlight& f) { return f.sg->gate.id == gate_id; });
    if (it == in_flight_.end()) return;  // second reservation of an already aborted CCZS
    for (const auto& res : it->reservations) {
      const auto& live = fabric_.reservations();
      if (std::any_of(live.begin(), live.end(), [&](const Reservation& x) { return x.id == res.id; })) {
        fabric_.release(res);
      }
    }
    emit("gate_abort", std::nullopt, it->sg->gate.operands, gate_id);
    ++result_.aborted_attempts;
    const ScheduledGate* sg = it->sg;
    in_flight_.erase(it);
    pending_.insert(std::upper_bound(pending_.begin(), pending_.end(), sg), sg);
  }

  bool try_failover() {
    try {
      fabric_.failover();
      ++result_.failovers;
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoBackupAvailable) throw;
      return false;
    }
  }

  // Nothing is in flight and no router is about to come up, yet gates wait.
  // In single-active operation a router that cannot serve a waiting gate is
  // retired and its backup promoted; otherwise the run stops.
  bool escalate() {
    if (fabric_.operating_mode() == OperatingMode::kSingleActive) {
      if (const auto active = fabric_.active_router()) {
        if (fabric_.count_routers(RouterMode::kDormant) > 0) {
          emit("escalate", *active, {}, pending_.front()->gate.id, "severed link on active router");
          fabric_.apply_failure(RouterTarget{*active});
          return try_failover();
        }
      }
      result_.reason = IncompleteReason::kNoBackupAvailable;
      return false;
    }
    result_.reason = IncompleteReason::kNoRouteAvailable;
    return false;
  }

  bool can_carry(RouterId r, QubitId a, QubitId b) const {
    return fabric_.router_ready(r) && !fabric_.router_busy(r) && !fabric_.link_failed(a, r) &&
           !fabric_.link_failed(b, r);
  }

  // Planned routers first, then the rest by index.
  std::vector<RouterId> router_preference(const ScheduledGate& sg) const {
    std::vector<RouterId> order = sg.routers;
    for (std::uint32_t r = 0; r < fabric_.topology().n_routers(); ++r) {
      if (std::find(order.begin(), order.end(), RouterId{r}) == order.end()) order.push_back({r});
    }
    return order;
  }

  std::optional<std::vector<RouterId>> pick_routers(const ScheduledGate& sg) const {
    const auto pairs = router_pairs(sg.gate);
    const auto order = router_preference(sg);
    std::vector<RouterId> chosen;
    for (const auto& [a, b] : pairs) {
      bool found = false;
      for (RouterId r : order) {
        if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) continue;
        if (can_carry(r, a, b)) {
          chosen.push_back(r);
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    return chosen;
  }

  void dispatch() {
    for (auto it = pending_.begin(); it != pending_.end();) {
      const ScheduledGate& sg = **it;
      const Nanos duration = sg.end - sg.start;
      InFlight flight{&sg, now_ + duration, {}};
      if (is_multi_qubit(sg.gate.kind)) {
        const auto routers = pick_routers(sg);
        if (!routers) {
          ++it;
          continue;
        }
        const auto pairs = router_pairs(sg.gate);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          flight.reservations.push_back(fabric_.reserve_pair(pairs[i].first, pairs[i].second,
                                                             (*routers)[i], sg.gate.id, duration));
        }
      }
      emit("gate_start", std::nullopt, sg.gate.operands, sg.gate.id,
           std::string(gate_kind_name(sg.gate.kind)));
      in_flight_.push_back(std::move(flight));
      it = pending_.erase(it);
    }
  }

  Nanos next_ready() const {
    Nanos t = kNever;
    for (std::uint32_t r = 0; r < fabric_.topology().n_routers(); ++r) {
      const RouterId id{r};
      if (fabric_.router_mode(id) == RouterMode::kActive && fabric_.ready_at(id) > now_) {
        t = std::min(t, fabric_.ready_at(id));
      }
    }
    return t;
  }

  Nanos next_event_time() const {
    Nanos t = next_ready();
    for (const auto& f : in_flight_) t = std::min(t, f.end);
    if (next_failure_ < failures_.size()) t = std::min(t, failures_[next_failure_].at);
    return t;
  }

  FabricState fabric_;
  std::span<const FailureEvent> failures_;
  const RunOptions& options_;
  std::size_t next_failure_ = 0;
  Nanos now_ = 0;
  std::vector<const ScheduledGate*> pending_;
  std::vector<InFlight> in_flight_;
  RunResult result_;
};

}  // namespace

RunResult run(const Schedule& s, std::size_t n_qubits, FabricState fabric,
              std::span<const FailureEvent> failures, Rng& noise_rng, const RunOptions& options) {
  for (std::size_t i = 1; i < failures.size(); ++i) {
    if (failures[i].at < failures[i - 1].at) {
      throw Error(ErrorCode::kInvalidArgument, "failure events must be time-sorted");
    }
  }
  Executor executor(n_qubits, std::move(fabric), failures, options);
  return executor.execute(s, noise_rng);
}

RunResult run_circuit(const Circuit& c, const Topology& t, OperatingMode mode,
                      std::span<const FailureEvent> failures, Rng& noise_rng,
                      const RunOptions& options) {
  const Schedule s = schedule(c, t, mode, options.timing);
  return run(s, c.n_qubits(), FabricState(t, mode, options.timing.t_signal), failures, noise_rng,
             options);
}

}  // namespace starfab
