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

#include "starfab/fabric.h"

#include <algorithm>

namespace starfab {

std::string_view mode_name(RouterMode mode) {
  switch (mode) {
    case RouterMode::kActive: return "Active";
    case RouterMode::kDormant: return "Dormant";
    case RouterMode::kFailed: return "Failed";
  }
  return "?";
}

std::string_view operating_mode_name(OperatingMode mode) {
  return mode == OperatingMode::kSingleActive ? "single_active" : "all_active";
}

FabricState::FabricState(Topology topology, OperatingMode mode, Nanos signal_time)
    : topology_(std::move(topology)),
      operating_mode_(mode),
      signal_time_(signal_time),
      switches_(topology_.links().size(), SwitchState::kOff),
      failed_links_(topology_.links().size(), false),
      modes_(topology_.n_routers(), RouterMode::kDormant),
      ready_at_(topology_.n_routers(), 0.0) {
  if (mode == OperatingMode::kAllActive) {
    std::fill(modes_.begin(), modes_.end(), RouterMode::kActive);
  } else {
    modes_[0] = RouterMode::kActive;
  }
}

FabricState init_fabric(const Topology& t, OperatingMode mode, Nanos signal_time) {
  return FabricState(t, mode, signal_time);
}

std::size_t FabricState::link(QubitId q, RouterId r) const {
  if (!topology_.has_link(q, r)) {
    throw Error(ErrorCode::kNoSuchLink, "no link " + label(q) + label(r));
  }
  return topology_.link_index(q, r);
}

void FabricState::require_router(RouterId r) const {
  if (!topology_.contains(r)) throw Error(ErrorCode::kNoSuchLink, "no router " + label(r));
}

RouterMode FabricState::router_mode(RouterId r) const {
  require_router(r);
  return modes_[r.index];
}

SwitchState FabricState::switch_state(QubitId q, RouterId r) const { return switches_[link(q, r)]; }

bool FabricState::link_failed(QubitId q, RouterId r) const { return failed_links_[link(q, r)]; }

Nanos FabricState::ready_at(RouterId r) const {
  require_router(r);
  return ready_at_[r.index];
}

bool FabricState::router_ready(RouterId r) const {
  return router_mode(r) == RouterMode::kActive && clock_ >= ready_at_[r.index];
}

bool FabricState::router_busy(RouterId r) const {
  return std::any_of(reservations_.begin(), reservations_.end(),
                     [r](const Reservation& res) { return res.router == r; });
}

std::optional<RouterId> FabricState::active_router() const {
  for (std::uint32_t r = 0; r < modes_.size(); ++r) {
    if (modes_[r] == RouterMode::kActive) return RouterId{r};
  }
  return std::nullopt;
}

std::size_t FabricState::count_routers(RouterMode mode) const {
  return static_cast<std::size_t>(std::count(modes_.begin(), modes_.end(), mode));
}

bool FabricState::gate_in_flight(std::size_t gate_id) const {
  return std::any_of(reservations_.begin(), reservations_.end(), [&](const Reservation& res) {
    return res.gate_id == gate_id && switch_state(res.first, res.router) == SwitchState::kOn &&
           switch_state(res.second, res.router) == SwitchState::kOn;
  });
}

void FabricState::advance_to(Nanos t) {
  if (t < clock_) {
    throw Error(ErrorCode::kInvariantViolation, "clock cannot move from " +
                                                    std::to_string(clock_) + " back to " +
                                                    std::to_string(t));
  }
  clock_ = t;
}

void FabricState::emit(std::string kind, std::optional<RouterId> r, std::vector<QubitId> qubits,
                       std::optional<std::size_t> gate, std::string detail) {
  log_.append({clock_, std::move(kind), gate, r, std::move(qubits), std::move(detail)});
}

void FabricState::set_switch(QubitId q, RouterId r, SwitchState pos) {
  const std::size_t idx = link(q, r);
  if (modes_[r.index] == RouterMode::kFailed) {
    throw Error(ErrorCode::kSwitchOnFailedRouter, label(q) + label(r) + " belongs to failed " +
                                                      label(r));
  }
  if (pos == SwitchState::kOn) {
    if (modes_[r.index] == RouterMode::kDormant) {
      throw Error(ErrorCode::kSwitchOnDormantRouter,
                  label(q) + label(r) + " cannot turn ON while " + label(r) + " is dormant");
    }
    if (failed_links_[idx]) {
      throw Error(ErrorCode::kLinkFailed, label(q) + label(r) + " is severed");
    }
  } else {
    for (const auto& res : reservations_) {
      if (res.router == r && (res.first == q || res.second == q)) {
        throw Error(ErrorCode::kReservationViolation,
                    label(q) + label(r) + " is held ON by gate " + std::to_string(res.gate_id + 1));
      }
    }
  }
  if (switches_[idx] != pos) {
    switches_[idx] = pos;
    emit(pos == SwitchState::kOn ? "switch_on" : "switch_off", r, {q});
  }
}

Reservation FabricState::reserve_pair(QubitId q1, QubitId q2, RouterId r, std::size_t gate_id,
                                      Nanos duration) {
  const std::size_t l1 = link(q1, r);
  const std::size_t l2 = link(q2, r);
  if (q1 == q2) {
    throw Error(ErrorCode::kDuplicateOperand, "cannot reserve " + label(q1) + " with itself");
  }
  if (!(duration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "reservation duration must be positive");
  }
  if (modes_[r.index] != RouterMode::kActive) {
    throw Error(ErrorCode::kRouterNotActive,
                label(r) + " is " + std::string(mode_name(modes_[r.index])));
  }
  if (clock_ < ready_at_[r.index]) {
    throw Error(ErrorCode::kRouterNotActive,
                label(r) + " is still activating until t=" + std::to_string(ready_at_[r.index]));
  }
  for (const auto& res : reservations_) {
    if (res.router != r) continue;
    for (QubitId q : {q1, q2}) {
      if (res.first == q || res.second == q) {
        throw Error(ErrorCode::kQubitBusyOnRouter,
                    label(q) + " already reserved on " + label(r) + " by gate " +
                        std::to_string(res.gate_id + 1));
      }
    }
    throw Error(ErrorCode::kRouterBusy, label(r) + " is carrying " + label(res.first) +
                                            label(res.second) + "; one pair at a time");
  }
  for (std::size_t l : {l1, l2}) {
    if (failed_links_[l]) {
      const Link& bad = topology_.links()[l];
      throw Error(ErrorCode::kLinkFailed, label(bad.qubit) + label(bad.router) + " is severed");
    }
  }

  for (std::uint32_t q = 0; q < topology_.n_qubits(); ++q) {
    const QubitId qid{q};
    if (qid != q1 && qid != q2 && switches_[link(qid, r)] == SwitchState::kOn) {
      switches_[link(qid, r)] = SwitchState::kOff;
      emit("switch_off", r, {qid});
    }
  }
  for (QubitId q : {q1, q2}) {
    if (switches_[link(q, r)] != SwitchState::kOn) {
      switches_[link(q, r)] = SwitchState::kOn;
      emit("switch_on", r, {q});
    }
  }
  Reservation res{next_reservation_++, r, q1, q2, gate_id, clock_, clock_ + duration};
  reservations_.push_back(res);
  emit("reserve", r, {q1, q2}, gate_id);
  return res;
}

void FabricState::release(const Reservation& res) {
  const auto it = std::find_if(reservations_.begin(), reservations_.end(),
                               [&](const Reservation& x) { return x.id == res.id; });
  if (it == reservations_.end()) {
    throw Error(ErrorCode::kUnknownReservation,
                "reservation " + std::to_string(res.id) + " is not active");
  }
  const Reservation held = *it;
  reservations_.erase(it);
  emit("release", held.router, {held.first, held.second}, held.gate_id);
  for (QubitId q : {held.first, held.second}) {
    auto& sw = switches_[link(q, held.router)];
    if (sw == SwitchState::kOn) {
      sw = SwitchState::kOff;
      emit("switch_off", held.router, {q});
    }
  }
}

std::vector<std::size_t> FabricState::abort_where(RouterId r, std::optional<QubitId> q) {
  std::vector<std::size_t> aborted;
  std::vector<Reservation> kept;
  for (const auto& res : reservations_) {
    const bool hit = res.router == r && (!q || res.first == *q || res.second == *q);
    if (hit) {
      aborted.push_back(res.gate_id);
      emit("abort", res.router, {res.first, res.second}, res.gate_id);
    } else {
      kept.push_back(res);
    }
  }
  reservations_ = std::move(kept);
  return aborted;
}

std::vector<std::size_t> FabricState::apply_failure(const FailureTarget& target) {
  std::vector<std::size_t> aborted;
  if (const auto* rt = std::get_if<RouterTarget>(&target)) {
    const RouterId r = rt->router;
    require_router(r);
    if (modes_[r.index] == RouterMode::kFailed) return aborted;
    emit("router_failed", r, {}, std::nullopt, std::string(mode_name(modes_[r.index])));
    aborted = abort_where(r, std::nullopt);
    modes_[r.index] = RouterMode::kFailed;
    for (std::uint32_t q = 0; q < topology_.n_qubits(); ++q) {
      auto& sw = switches_[link(QubitId{q}, r)];
      if (sw == SwitchState::kOn) {
        sw = SwitchState::kOff;
        emit("switch_off", r, {QubitId{q}});
      }
    }
  } else {
    const auto& lt = std::get<LinkTarget>(target);
    const std::size_t idx = link(lt.qubit, lt.router);
    if (failed_links_[idx]) return aborted;
    emit("link_failed", lt.router, {lt.qubit});
    aborted = abort_where(lt.router, lt.qubit);
    failed_links_[idx] = true;
    // Partners of an aborted pair drop back to OFF as well.
    for (std::uint32_t q = 0; q < topology_.n_qubits(); ++q) {
      const QubitId qid{q};
      auto& sw = switches_[link(qid, lt.router)];
      const bool held = std::any_of(reservations_.begin(), reservations_.end(), [&](const auto& res) {
        return res.router == lt.router && (res.first == qid || res.second == qid);
      });
      if (sw == SwitchState::kOn && !held) {
        sw = SwitchState::kOff;
        emit("switch_off", lt.router, {qid});
      }
    }
  }
  return aborted;
}

FailoverResult FabricState::failover() {
  if (operating_mode_ != OperatingMode::kSingleActive) {
    throw Error(ErrorCode::kInvalidState, "failover applies only to single-active operation");
  }
  if (const auto active = active_router()) {
    throw Error(ErrorCode::kInvalidState, label(*active) + " is still active");
  }
  for (std::uint32_t r = 0; r < modes_.size(); ++r) {
    if (modes_[r] == RouterMode::kDormant) {
      modes_[r] = RouterMode::kActive;
      ready_at_[r] = clock_ + signal_time_;
      emit("failover", RouterId{r}, {}, std::nullopt,
           "ready_at=" + std::to_string(ready_at_[r]));
      return {RouterId{r}, signal_time_};
    }
  }
  emit("no_backup", std::nullopt, {});
  throw Error(ErrorCode::kNoBackupAvailable, "every router has failed");
}

std::vector<std::string> FabricState::check_invariants() const {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < reservations_.size(); ++i) {
    const auto& res = reservations_[i];
    for (std::size_t j = i + 1; j < reservations_.size(); ++j) {
      if (reservations_[j].router == res.router) {
        problems.push_back("two reservations share " + label(res.router));
      }
    }
    if (modes_[res.router.index] != RouterMode::kActive) {
      problems.push_back("reservation on non-active " + label(res.router));
    }
    for (QubitId q : {res.first, res.second}) {
      if (switches_[topology_.link_index(q, res.router)] != SwitchState::kOn) {
        problems.push_back("reserved switch " + label(q) + label(res.router) + " is OFF");
      }
    }
  }
  for (const Link& l : topology_.links()) {
    const std::size_t idx = topology_.link_index(l.qubit, l.router);
    if (switches_[idx] == SwitchState::kOn &&
        (modes_[l.router.index] != RouterMode::kActive || failed_links_[idx])) {
      problems.push_back("switch " + label(l.qubit) + label(l.router) + " is ON on an unusable link");
    }
  }
  if (operating_mode_ == OperatingMode::kSingleActive && count_routers(RouterMode::kActive) > 1) {
    problems.push_back("more than one active router in single-active operation");
  }
  return problems;
}

}  // namespace starfab
