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

// starfab: command-line front end for the multi-star fabric simulator.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 the scenario ran
// but at least one run was incomplete, 3 internal invariant violation.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starfab/circuit.h"
#include "starfab/fabric.h"
#include "starfab/harness.h"
#include "starfab/qsim.h"
#include "starfab/run.h"
#include "starfab/scheduler.h"
#include "starfab/topology.h"

namespace {

using namespace starfab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitInternal = 3;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string format = "table";
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// R<r>@<t> fails a router, Q<q>R<r>@<t> a single link; labels are 1-based.
FailureEvent parse_fail_spec(const std::string& spec) {
  static const std::regex pattern(R"(^(?:[Qq](\d+))?[Rr](\d+)@([0-9]*\.?[0-9]+(?:[eE][-+]?\d+)?)$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad --fail '" + spec + "'; expected R<r>@<ns> or Q<q>R<r>@<ns>");
  }
  const auto router = std::stoul(m[2].str());
  if (router == 0) throw Error(ErrorCode::kInvalidArgument, "router labels are 1-based");
  FailureEvent ev{std::stod(m[3].str()),
                  RouterTarget{RouterId{static_cast<std::uint32_t>(router - 1)}}};
  if (m[1].matched) {
    const auto qubit = std::stoul(m[1].str());
    if (qubit == 0) throw Error(ErrorCode::kInvalidArgument, "qubit labels are 1-based");
    ev.target = LinkTarget{QubitId{static_cast<std::uint32_t>(qubit - 1)},
                           RouterId{static_cast<std::uint32_t>(router - 1)}};
  }
  return ev;
}

Scenario default_scenario() {
  return parse_config(R"({"topology": {"n_qubits": 4, "n_routers": 2},
                          "circuit": {"builtin": "bell"}})");
}

Scenario load_scenario(const GlobalOptions& g, const std::vector<std::string>& fails,
                       std::optional<std::size_t> trials) {
  Scenario s = g.config.empty()
                   ? default_scenario()
                   : parse_config(read_text(g.config),
                                  std::filesystem::path(g.config).parent_path());
  if (g.seed) s.seed = *g.seed;
  if (trials) {
    if (*trials < 1) throw Error(ErrorCode::kValidationError, "--trials must be >= 1");
    s.trials = *trials;
  }
  if (!fails.empty()) {
    s.failures.policy = TargetPolicy::kFixed;
    s.failures.rate = 0.0;
    s.failures.fixed.clear();
    for (const auto& spec : fails) s.failures.fixed.push_back(parse_fail_spec(spec));
    std::stable_sort(s.failures.fixed.begin(), s.failures.fixed.end(),
                     [](const auto& a, const auto& b) { return a.at < b.at; });
    validate(s.failures, s.topology());
  }
  return s;
}

ReportFormat parse_format(const std::string& f) {
  return f == "records" ? ReportFormat::kRecords : ReportFormat::kTable;
}

std::string format_event(const EventRecord& e) {
  std::ostringstream out;
  out << "  t=" << e.t << "ns " << e.kind;
  if (e.gate) out << " gate=" << *e.gate + 1;
  if (e.router) out << " router=" << label(*e.router);
  for (QubitId q : e.qubits) out << ' ' << label(q);
  if (!e.detail.empty()) out << " (" << e.detail << ')';
  out << '\n';
  return out.str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_enumerate(const GlobalOptions& g, std::optional<int> qubits) {
  int n = 4;
  if (qubits) {
    n = *qubits;
  } else if (!g.config.empty()) {
    n = parse_config(read_text(g.config), std::filesystem::path(g.config).parent_path()).n_qubits;
  }
  const Topology t(n, 1);
  const auto pairs = qubit_pairs(t);
  const auto census = enumerate_double_pairs(n);
  Output out(g.out);
  auto& os = out.stream();
  auto name = [](const QubitPair& p) { return label(p.first) + label(p.second); };
  if (parse_format(g.format) == ReportFormat::kRecords) {
    nlohmann::ordered_json j;
    j["schema_version"] = kRecordsSchemaVersion;
    j["record"] = "enumerate";
    j["n_qubits"] = n;
    j["pairs"] = pairs.size();
    j["double_pairs"] = census.total;
    j["disjoint"] = census.disjoint;
    j["shared"] = census.shared;
    os << j.dump() << '\n';
    for (const auto& dp : census.list) {
      nlohmann::ordered_json d;
      d["schema_version"] = kRecordsSchemaVersion;
      d["record"] = "double_pair";
      d["first"] = name(dp.first);
      d["second"] = name(dp.second);
      d["class"] = dp.cls.tag == PairClass::Tag::kDisjoint ? "disjoint" : "shared";
      if (dp.cls.shared) d["shared_qubit"] = label(*dp.cls.shared);
      os << d.dump() << '\n';
    }
    return kExitOk;
  }
  os << "qubits        " << n << '\n';
  os << "pairs         " << pairs.size() << " :";
  for (const auto& p : pairs) os << ' ' << name(p);
  os << '\n';
  os << "double_pairs  " << census.total << '\n';
  os << "disjoint      " << census.disjoint << '\n';
  os << "shared        " << census.shared << '\n';
  for (const auto& dp : census.list) {
    os << "  (" << name(dp.first) << ", " << name(dp.second) << ") ";
    if (dp.cls.tag == PairClass::Tag::kDisjoint) {
      os << "disjoint\n";
    } else {
      os << "shared " << label(*dp.cls.shared) << '\n';
    }
  }
  return kExitOk;
}

struct ScheduleArgs {
  std::string circuit_file;
  std::string builtin;
  std::size_t size = 0;
  std::optional<int> qubits;
  std::optional<int> routers;
  std::string mode;
};

int cmd_schedule(const GlobalOptions& g, const ScheduleArgs& a) {
  Scenario s = g.config.empty() ? default_scenario()
                                : parse_config(read_text(g.config),
                                               std::filesystem::path(g.config).parent_path());
  if (!g.config.empty() && g.seed) s.seed = *g.seed;
  if (a.qubits) s.n_qubits = *a.qubits;
  if (a.routers) s.n_routers = *a.routers;
  if (a.mode == "single_active") s.mode = OperatingMode::kSingleActive;
  if (a.mode == "all_active") s.mode = OperatingMode::kAllActive;
  const Topology t = s.topology();
  Circuit c = s.circuit;
  if (!a.circuit_file.empty()) {
    c = parse_circuit(read_text(a.circuit_file), t.n_qubits());
  } else if (!a.builtin.empty()) {
    c = builtin_circuit(a.builtin, t.n_qubits(), a.size);
  } else if (c.n_qubits() != t.n_qubits()) {
    Circuit resized(t.n_qubits());
    for (const Gate& gate : c.gates()) resized.add(gate.kind, gate.operands, gate.params);
    c = std::move(resized);
  }
  const Schedule plan = schedule(c, t, s.mode, s.timing);
  const auto violations = validate_schedule(plan, c, t);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInvariantViolation, "scheduler produced an invalid schedule: " +
                                                    std::string(violation_name(violations[0].kind)) +
                                                    " " + violations[0].detail);
  }
  Output out(g.out);
  auto& os = out.stream();
  if (parse_format(g.format) == ReportFormat::kRecords) {
    for (const auto& layer : plan.layers) {
      for (const auto& sg : layer) {
        nlohmann::ordered_json j;
        j["schema_version"] = kRecordsSchemaVersion;
        j["record"] = "scheduled_gate";
        j["layer"] = sg.layer + 1;
        j["gate"] = sg.gate.id + 1;
        j["kind"] = gate_kind_name(sg.gate.kind);
        auto& qs = j["qubits"] = nlohmann::ordered_json::array();
        for (QubitId q : sg.gate.operands) qs.push_back(label(q));
        auto& rs = j["routers"] = nlohmann::ordered_json::array();
        for (RouterId r : sg.routers) rs.push_back(label(r));
        j["start_ns"] = sg.start;
        j["end_ns"] = sg.end;
        os << j.dump() << '\n';
      }
    }
    return kExitOk;
  }
  os << format_schedule_table(plan);
  os << "# depth " << plan.depth << ", layers " << plan.layers.size() << ", makespan "
     << plan.makespan() << " ns\n";
  return kExitOk;
}

int cmd_simulate(const GlobalOptions& g, const std::vector<std::string>& fails) {
  Scenario s = load_scenario(g, fails, std::size_t{1});
  const Report report = run_scenario(s);
  Output out(g.out);
  auto& os = out.stream();
  if (parse_format(g.format) == ReportFormat::kRecords) {
    os << emit_report(report, ReportFormat::kRecords);
  } else {
    os << emit_report(report, ReportFormat::kTable);
    const RunResult& r = report.first_trial;
    os << "run\n  complete " << (r.complete ? "yes" : "no");
    if (!r.complete) os << " (" << incomplete_reason_name(r.reason) << ")";
    os << "\n  makespan_ns " << r.makespan << "\n  failovers " << r.failovers
       << "\n  aborted_attempts " << r.aborted_attempts << '\n';
    os << "final state (bitstring Q1..Qn, re, im)\n" << dump_state(r.final_state);
    os << "trace\n";
    for (const auto& e : r.trace) os << format_event(e);
  }
  return report.first_trial.complete ? kExitOk : kExitIncomplete;
}

int cmd_montecarlo(const GlobalOptions& g, const std::vector<std::string>& fails,
                   std::optional<std::size_t> trials) {
  Scenario s = load_scenario(g, fails, trials);
  const Report report = run_scenario(s);
  Output out(g.out);
  out.stream() << emit_report(report, parse_format(g.format));
  return report.metrics.completed == report.metrics.trials ? kExitOk : kExitIncomplete;
}

// Scripted walkthrough: Bell pair on Q1, Q3 with R1 failing mid-CZ.
int cmd_failover_demo(const GlobalOptions& g, double fail_at) {
  Output out(g.out);
  auto& os = out.stream();
  const Timing timing;
  RunOptions options;
  options.timing = timing;
  const Circuit bell = bell_circuit(4);
  const std::vector<FailureEvent> none;
  const std::vector<FailureEvent> r1_fails{{fail_at, RouterTarget{RouterId{0}}}};

  os << "circuit\n" << format_circuit(bell);
  Rng rng0(g.seed.value_or(1));
  const RunResult baseline =
      run_circuit(bell, Topology(4, 2), OperatingMode::kSingleActive, none, rng0, options);
  os << "\n[1] double-star, R2 dormant, no failure: makespan " << baseline.makespan << " ns\n";

  Rng rng1(g.seed.value_or(1));
  const RunResult survived =
      run_circuit(bell, Topology(4, 2), OperatingMode::kSingleActive, r1_fails, rng1, options);
  os << "\n[2] double-star, R1 fails at t=" << fail_at << " ns\n";
  for (const auto& e : survived.trace) os << format_event(e);
  const double diff = survived.final_state.max_abs_diff(baseline.final_state);
  os << "  complete " << (survived.complete ? "yes" : "no") << ", failovers " << survived.failovers
     << ", makespan " << survived.makespan << " ns (+" << survived.makespan - baseline.makespan
     << " ns), max |state difference| " << diff << '\n';

  Rng rng2(g.seed.value_or(1));
  const RunResult severed =
      run_circuit(bell, Topology(4, 1), OperatingMode::kSingleActive, r1_fails, rng2, options);
  os << "\n[3] single star, same failure: complete " << (severed.complete ? "yes" : "no") << " ("
     << incomplete_reason_name(severed.reason) << ")\n";

  os << "\nfinal state after failover\n" << dump_state(survived.final_state);
  const bool as_expected = survived.complete && diff <= kStateTolerance &&
                           survived.makespan >= baseline.makespan + timing.t_signal &&
                           !severed.complete;
  return as_expected ? kExitOk : kExitInternal;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvariantViolation: return kExitInternal;
    default: return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starfab: star / multi-star quantum fabric simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--config", g.config, "Scenario config file (JSON)");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "records"}));

  std::optional<int> enum_qubits;
  auto* enumerate = app.add_subcommand("enumerate", "Qubit pairs and double-pair combinatorics");
  enumerate->add_option("--qubits", enum_qubits, "Number of qubits (default 4)");

  ScheduleArgs sched;
  auto* schedule_cmd = app.add_subcommand("schedule", "Schedule a circuit into a layer table");
  schedule_cmd->add_option("--circuit", sched.circuit_file, "Circuit file (id kind q[,q,q])");
  schedule_cmd->add_option("--builtin", sched.builtin, "Built-in circuit")
      ->check(CLI::IsMember({"bell", "ghz", "ladder", "cczs_demo"}));
  schedule_cmd->add_option("--size", sched.size, "Gate count for the ladder circuit");
  schedule_cmd->add_option("--qubits", sched.qubits, "Number of qubits");
  schedule_cmd->add_option("--routers", sched.routers, "Number of routers");
  schedule_cmd->add_option("--mode", sched.mode, "Operating mode")
      ->check(CLI::IsMember({"single_active", "all_active"}));

  std::vector<std::string> sim_fails;
  auto* simulate = app.add_subcommand("simulate", "Run one trial and print its trace");
  simulate->add_option("--fail", sim_fails, "Inject a failure: R<r>@<ns> or Q<q>R<r>@<ns>");

  std::vector<std::string> mc_fails;
  std::optional<std::size_t> mc_trials;
  auto* montecarlo = app.add_subcommand("montecarlo", "Run all trials and report metrics");
  montecarlo->add_option("--fail", mc_fails, "Inject a failure: R<r>@<ns> or Q<q>R<r>@<ns>");
  montecarlo->add_option("--trials", mc_trials, "Override the number of trials");

  double demo_fail_at = 120.0;
  auto* demo = app.add_subcommand("failover-demo", "Scripted router failure and takeover");
  demo->add_option("--fail-at", demo_fail_at, "Failure time of R1 in ns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*enumerate) return cmd_enumerate(g, enum_qubits);
    if (*schedule_cmd) return cmd_schedule(g, sched);
    if (*simulate) return cmd_simulate(g, sim_fails);
    if (*montecarlo) return cmd_montecarlo(g, mc_fails, mc_trials);
    if (*demo) return cmd_failover_demo(g, demo_fail_at);
  } catch (const Error& e) {
    std::cerr << "starfab: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "starfab: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
