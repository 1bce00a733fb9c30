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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starfab/common.h"
#include "starfab/event_log.h"
#include "starfab/failures.h"
#include "starfab/topology.h"

namespace starfab {

enum class SwitchState { kOff, kOn };
enum class RouterMode { kActive, kDormant, kFailed };

// SingleActive: one router carries traffic, the rest are dormant backups.
// AllActive: every router carries traffic; failover does not apply.
enum class OperatingMode { kSingleActive, kAllActive };

std::string_view mode_name(RouterMode mode);
std::string_view operating_mode_name(OperatingMode mode);

inline constexpr Nanos kDefaultSignalTime = 20.0;

struct Reservation {
  std::uint64_t id = 0;
  RouterId router;
  QubitId first;
  QubitId second;
  std::size_t gate_id = 0;
  Nanos start = 0;
  Nanos end = 0;

  bool operator==(const Reservation&) const = default;
};

struct FailoverResult {
  RouterId activated;
  Nanos delay = 0;
};

// Switch positions, router modes and pair reservations of one run.
//
// Idle switches rest OFF. A reservation turns ON exactly the two switches it
// needs and forces every other switch toward its router OFF. Every transition
// is appended to the event log.
class FabricState {
 public:
  FabricState(Topology topology, OperatingMode mode, Nanos signal_time = kDefaultSignalTime);

  const Topology& topology() const { return topology_; }
  OperatingMode operating_mode() const { return operating_mode_; }
  Nanos clock() const { return clock_; }
  Nanos signal_time() const { return signal_time_; }

  RouterMode router_mode(RouterId r) const;
  SwitchState switch_state(QubitId q, RouterId r) const;
  bool link_failed(QubitId q, RouterId r) const;
  // A freshly promoted backup is Active but cannot carry a pair until the
  // signaling delay has elapsed.
  bool router_ready(RouterId r) const;
  Nanos ready_at(RouterId r) const;
  bool router_busy(RouterId r) const;
  std::optional<RouterId> active_router() const;
  std::size_t count_routers(RouterMode mode) const;

  const std::vector<Reservation>& reservations() const { return reservations_; }
  // True iff the gate holds a reservation whose two switches are both ON.
  bool gate_in_flight(std::size_t gate_id) const;

  // Advances the clock; time never moves backwards.
  void advance_to(Nanos t);

  void set_switch(QubitId q, RouterId r, SwitchState pos);
  Reservation reserve_pair(QubitId q1, QubitId q2, RouterId r, std::size_t gate_id, Nanos duration);
  void release(const Reservation& res);

  // Applies a router or link failure at the current clock. Returns the gate
  // ids whose reservations were aborted. Failing a failed target is a no-op.
  std::vector<std::size_t> apply_failure(const FailureTarget& target);

  // Promotes the lowest-indexed dormant router after the active one failed.
  // Throws NoBackupAvailable when no dormant router is left.
  FailoverResult failover();

  // Empty when every structural invariant holds.
  std::vector<std::string> check_invariants() const;

  const EventLog& log() const { return log_; }
  EventLog& log() { return log_; }

 private:
  std::size_t link(QubitId q, RouterId r) const;
  void require_router(RouterId r) const;
  void emit(std::string kind, std::optional<RouterId> r, std::vector<QubitId> qubits,
            std::optional<std::size_t> gate = std::nullopt, std::string detail = {});
  std::vector<std::size_t> abort_where(RouterId r, std::optional<QubitId> q);

  Topology topology_;
  OperatingMode operating_mode_;
  Nanos signal_time_;
  Nanos clock_ = 0;
  std::vector<SwitchState> switches_;
  std::vector<bool> failed_links_;
  std::vector<RouterMode> modes_;
  std::vector<Nanos> ready_at_;
  std::vector<Reservation> reservations_;
  std::uint64_t next_reservation_ = 1;
  EventLog log_;
};

FabricState init_fabric(const Topology& t, OperatingMode mode,
                        Nanos signal_time = kDefaultSignalTime);

}  // namespace starfab
