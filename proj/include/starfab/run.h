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
#include <string_view>
#include <vector>

#include "starfab/circuit.h"
#include "starfab/event_log.h"
#include "starfab/fabric.h"
#include "starfab/failures.h"
#include "starfab/qsim.h"
#include "starfab/scheduler.h"

namespace starfab {

struct RunOptions {
  Timing timing;
  FidelityModel fidelity = FidelityModel::defaults();
  // Check fabric invariants at every event boundary; a breach throws
  // InvariantViolation.
  bool check_invariants = true;
};

enum class IncompleteReason { kNone, kNoBackupAvailable, kNoRouteAvailable };

std::string_view incomplete_reason_name(IncompleteReason reason);

struct RunResult {
  StateVector final_state{1};
  bool complete = false;
  IncompleteReason reason = IncompleteReason::kNone;
  Nanos makespan = 0;
  std::size_t failovers = 0;
  std::size_t aborted_attempts = 0;
  std::size_t failures_applied = 0;
  std::vector<Gate> executed;  // completed gates in application order
  std::vector<EventRecord> trace;
  double analytic_fidelity = 1.0;
  bool success = false;  // complete and the Bernoulli success draw passed
};

// Executes the schedule layer by layer on the fabric, interleaving failure
// events in time order. A gate whose reservation is aborted applies nothing
// and is retried once a router can carry it; in single-active operation the
// loss of the active router triggers failover. Unitaries of a layer are
// applied in schedule order once the whole layer has completed, so retries
// never change the final state.
RunResult run(const Schedule& s, std::size_t n_qubits, FabricState fabric,
              std::span<const FailureEvent> failures, Rng& noise_rng, const RunOptions& options = {});

RunResult run_circuit(const Circuit& c, const Topology& t, OperatingMode mode,
                      std::span<const FailureEvent> failures, Rng& noise_rng,
                      const RunOptions& options = {});

}  // namespace starfab
