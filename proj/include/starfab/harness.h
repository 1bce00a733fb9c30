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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starfab/circuit.h"
#include "starfab/failures.h"
#include "starfab/qsim.h"
#include "starfab/run.h"
#include "starfab/scheduler.h"

namespace starfab {

inline constexpr int kRecordsSchemaVersion = 1;

struct CircuitSource {
  enum class Kind { kBuiltin, kInline, kFile };
  Kind kind = Kind::kBuiltin;
  std::string value;      // builtin name, inline text, or file path
  std::size_t size = 0;   // builtin size argument (ladder gate count)

  bool operator==(const CircuitSource&) const = default;
};

struct Scenario {
  int n_qubits = 4;
  int n_routers = 2;
  OperatingMode mode = OperatingMode::kSingleActive;
  CircuitSource source;
  Circuit circuit{4};
  FailureModel failures;
  bool horizon_auto = true;  // horizon derived from the planned makespan
  FidelityModel fidelity = FidelityModel::defaults();
  Timing timing;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::vector<std::string> warnings;

  Topology topology() const { return Topology(n_qubits, n_routers); }
  bool operator==(const Scenario&) const = default;
};

// Parses the JSON scenario file. Relative circuit file paths resolve against
// `base_dir`. Throws ParseError (with line/field) or ValidationError (listing
// every violated constraint).
Scenario parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
std::string scenario_to_config(const Scenario& s);

// Horizon used when the config leaves it out: long enough to cover every
// failover and capacity-loss delay the run can accumulate.
Nanos default_horizon(const Scenario& s, Nanos planned_makespan);
FailureModel effective_failure_model(const Scenario& s, Nanos planned_makespan);

struct Metrics {
  std::size_t trials = 0;
  std::size_t completed = 0;
  double completion_rate = 0.0;
  double mean_makespan = 0.0;  // over completed trials
  double mean_failovers = 0.0;
  std::size_t depth = 0;
  std::optional<double> depth_ratio;  // single-star depth / this depth; absent if
                                      // the circuit cannot run on a single star
  double analytic_fidelity = 1.0;
  double empirical_success_rate = 0.0;
  std::size_t incomplete_no_backup = 0;
  std::size_t incomplete_no_route = 0;

  bool operator==(const Metrics&) const = default;
};

struct TrialSummary {
  bool complete = false;
  IncompleteReason reason = IncompleteReason::kNone;
  Nanos makespan = 0;
  std::size_t failovers = 0;
  std::size_t failures = 0;
  bool success = false;
};

struct Report {
  Scenario scenario;
  Schedule schedule;
  Metrics metrics;
  RunResult first_trial;
  std::vector<TrialSummary> trials;
};

// Seed of one trial, stable under partial or reordered execution.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

TrialSummary summarize(const RunResult& r);
// Index-ordered reduction; independent of the order trials ran in.
Metrics aggregate(const std::vector<TrialSummary>& trials, const Schedule& s, const Scenario& sc);

RunResult run_trial(const Scenario& s, const Schedule& plan, std::size_t trial);
Report run_scenario(const Scenario& s);
Metrics monte_carlo(const Scenario& s);

enum class ReportFormat { kTable, kRecords };

std::string emit_report(const Report& r, ReportFormat format);
// Reads the metrics record back out of `records` output.
Metrics parse_metrics_record(std::string_view records);

}  // namespace starfab
