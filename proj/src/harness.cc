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

#include "starfab/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace starfab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Circuits are parsed against a generous register first so that operands
// beyond the topology surface as validation problems, not parse failures.
constexpr std::size_t kParseRegister = 1024;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + path + "': " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) field_error(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      field_error(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const json* find(const json& obj, std::string_view key) {
  const auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

std::int64_t get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) field_error(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    field_error(path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) field_error(path, "expected a string");
  return v.get<std::string>();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kValidationError, "cannot read circuit file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view policy_name(TargetPolicy p) {
  switch (p) {
    case TargetPolicy::kUniformRouter: return "uniform_router";
    case TargetPolicy::kUniformLink: return "uniform_link";
    case TargetPolicy::kFixed: return "fixed";
  }
  return "?";
}

std::string_view source_key(CircuitSource::Kind k) {
  switch (k) {
    case CircuitSource::Kind::kBuiltin: return "builtin";
    case CircuitSource::Kind::kInline: return "inline";
    case CircuitSource::Kind::kFile: return "file";
  }
  return "?";
}

Circuit load_circuit(const CircuitSource& src, std::size_t n_qubits,
                     const std::filesystem::path& base_dir) {
  switch (src.kind) {
    case CircuitSource::Kind::kBuiltin: return builtin_circuit(src.value, n_qubits, src.size);
    case CircuitSource::Kind::kInline: return parse_circuit(src.value, kParseRegister);
    case CircuitSource::Kind::kFile: {
      std::filesystem::path p(src.value);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      return parse_circuit(read_file(p), kParseRegister);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown circuit source");
}

void parse_topology(const json& j, Scenario& s) {
  check_keys(j, "topology", {"n_qubits", "n_routers", "mode"});
  const json* nq = find(j, "n_qubits");
  const json* nr = find(j, "n_routers");
  if (!nq) field_error("topology.n_qubits", "required");
  if (!nr) field_error("topology.n_routers", "required");
  const auto q = get_int(*nq, "topology.n_qubits");
  const auto r = get_int(*nr, "topology.n_routers");
  s.n_qubits = static_cast<int>(std::clamp<std::int64_t>(q, -1, 1 << 20));
  s.n_routers = static_cast<int>(std::clamp<std::int64_t>(r, -1, 1 << 20));
  if (const json* m = find(j, "mode")) {
    const auto name = get_string(*m, "topology.mode");
    if (name == "single_active") {
      s.mode = OperatingMode::kSingleActive;
    } else if (name == "all_active") {
      s.mode = OperatingMode::kAllActive;
    } else {
      field_error("topology.mode", "expected single_active or all_active");
    }
  }
}

void parse_circuit_section(const json& j, Scenario& s) {
  check_keys(j, "circuit", {"builtin", "inline", "file", "size"});
  int sources = 0;
  for (auto kind : {CircuitSource::Kind::kBuiltin, CircuitSource::Kind::kInline,
                    CircuitSource::Kind::kFile}) {
    if (const json* v = find(j, source_key(kind))) {
      ++sources;
      s.source.kind = kind;
      s.source.value = get_string(*v, join("circuit", source_key(kind)));
    }
  }
  if (sources != 1) field_error("circuit", "give exactly one of builtin, inline, file");
  if (const json* v = find(j, "size")) {
    const auto n = get_int(*v, "circuit.size");
    if (n < 0) field_error("circuit.size", "must be >= 0");
    s.source.size = static_cast<std::size_t>(n);
  }
}

FailureEvent parse_event(const json& j, const std::string& path) {
  check_keys(j, path, {"at_ns", "router", "qubit"});
  const json* at = find(j, "at_ns");
  const json* router = find(j, "router");
  if (!at) field_error(path + ".at_ns", "required");
  if (!router) field_error(path + ".router", "required");
  const auto r = get_int(*router, path + ".router");
  if (r < 1) field_error(path + ".router", "router labels are 1-based");
  FailureEvent ev{get_real(*at, path + ".at_ns"), RouterTarget{RouterId{static_cast<std::uint32_t>(r - 1)}}};
  if (const json* qv = find(j, "qubit")) {
    const auto q = get_int(*qv, path + ".qubit");
    if (q < 1) field_error(path + ".qubit", "qubit labels are 1-based");
    ev.target = LinkTarget{QubitId{static_cast<std::uint32_t>(q - 1)},
                           RouterId{static_cast<std::uint32_t>(r - 1)}};
  }
  return ev;
}

void parse_failures(const json& j, Scenario& s) {
  check_keys(j, "failures", {"rate_per_ns", "horizon_ns", "policy", "events"});
  if (const json* v = find(j, "rate_per_ns")) s.failures.rate = get_real(*v, "failures.rate_per_ns");
  if (const json* v = find(j, "horizon_ns")) {
    s.failures.horizon = get_real(*v, "failures.horizon_ns");
    s.horizon_auto = false;
  }
  const json* events = find(j, "events");
  if (events) {
    if (!events->is_array()) field_error("failures.events", "expected an array");
    for (std::size_t i = 0; i < events->size(); ++i) {
      s.failures.fixed.push_back(
          parse_event((*events)[i], "failures.events[" + std::to_string(i) + "]"));
    }
    s.failures.policy = TargetPolicy::kFixed;
  }
  if (const json* v = find(j, "policy")) {
    const auto name = get_string(*v, "failures.policy");
    if (name == "uniform_router") {
      s.failures.policy = TargetPolicy::kUniformRouter;
    } else if (name == "uniform_link") {
      s.failures.policy = TargetPolicy::kUniformLink;
    } else if (name == "fixed") {
      s.failures.policy = TargetPolicy::kFixed;
    } else {
      field_error("failures.policy", "expected uniform_router, uniform_link or fixed");
    }
  }
}

void parse_fidelity(const json& j, Scenario& s) {
  if (!j.is_object()) field_error("fidelity", "expected an object");
  for (const auto& [key, value] : j.items()) {
    const auto kind = parse_gate_kind(key);
    if (!kind) field_error(join("fidelity", key), "unknown gate kind");
    s.fidelity.per_gate[*kind] = get_real(value, join("fidelity", key));
  }
}

void parse_timing(const json& j, Scenario& s) {
  check_keys(j, "timing", {"t_1q_ns", "t_2q_ns", "t_signal_ns"});
  if (const json* v = find(j, "t_1q_ns")) s.timing.t_1q = get_real(*v, "timing.t_1q_ns");
  if (const json* v = find(j, "t_2q_ns")) s.timing.t_2q = get_real(*v, "timing.t_2q_ns");
  if (const json* v = find(j, "t_signal_ns")) s.timing.t_signal = get_real(*v, "timing.t_signal_ns");
}

void parse_run(const json& j, Scenario& s) {
  check_keys(j, "run", {"seed", "trials", "threads"});
  if (const json* v = find(j, "seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      field_error("run.seed", "expected a non-negative integer");
    }
    s.seed = v->get<std::uint64_t>();
  }
  if (const json* v = find(j, "trials")) {
    const auto n = get_int(*v, "run.trials");
    if (n < 1) {
      s.trials = 0;  // reported by validation
    } else {
      s.trials = static_cast<std::size_t>(n);
    }
  }
  if (const json* v = find(j, "threads")) {
    const auto n = get_int(*v, "run.threads");
    if (n < 0) field_error("run.threads", "must be >= 0");
    s.threads = static_cast<unsigned>(n);
  }
}

void validate(Scenario& s, const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  const bool topology_ok = s.n_qubits >= 2 && s.n_routers >= 1 &&
                           s.n_qubits <= static_cast<int>(kMaxSimQubits);
  if (s.n_qubits < 2) problems.push_back("topology.n_qubits must be >= 2");
  if (s.n_qubits > static_cast<int>(kMaxSimQubits)) {
    problems.push_back("topology.n_qubits must be <= " + std::to_string(kMaxSimQubits));
  }
  if (s.n_routers < 1) problems.push_back("topology.n_routers must be >= 1");
  if (s.trials < 1) problems.push_back("run.trials must be >= 1");
  if (!(s.timing.t_1q > 0)) problems.push_back("timing.t_1q_ns must be > 0");
  if (!(s.timing.t_2q > 0)) problems.push_back("timing.t_2q_ns must be > 0");
  if (!(s.timing.t_signal >= 0)) problems.push_back("timing.t_signal_ns must be >= 0");
  for (const auto& [kind, f] : s.fidelity.per_gate) {
    if (!(f > 0.0 && f <= 1.0)) {
      problems.push_back("fidelity." + std::string(gate_kind_name(kind)) + " must lie in (0, 1]");
    }
  }
  if (s.failures.policy == TargetPolicy::kFixed && s.failures.rate > 0.0) {
    problems.push_back("failures.rate_per_ns has no effect under the fixed policy");
  }
  if (s.failures.policy != TargetPolicy::kFixed && !s.failures.fixed.empty()) {
    problems.push_back("failures.events require the fixed policy");
  }

  if (topology_ok) {
    const Topology t = s.topology();
    try {
      starfab::validate(s.failures, t);
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
    try {
      const Circuit parsed = load_circuit(s.source, static_cast<std::size_t>(s.n_qubits), base_dir);
      Circuit fitted(static_cast<std::size_t>(s.n_qubits));
      bool fits = true;
      for (const Gate& g : parsed.gates()) {
        for (QubitId q : g.operands) {
          if (!t.contains(q)) {
            problems.push_back("circuit gate " + std::to_string(g.id + 1) + " uses " + label(q) +
                               " on a " + std::to_string(s.n_qubits) + "-qubit topology");
            fits = false;
          }
        }
        if (router_demand(g.kind) > router_capacity(t, s.mode)) {
          problems.push_back("circuit gate " + std::to_string(g.id + 1) + " (" +
                             std::string(gate_kind_name(g.kind)) + ") needs " +
                             std::to_string(router_demand(g.kind)) + " concurrent routers; " +
                             std::string(operating_mode_name(s.mode)) + " offers " +
                             std::to_string(router_capacity(t, s.mode)));
        }
        if (fits) fitted.add(g.kind, g.operands, g.params);
      }
      if (fits) s.circuit = std::move(fitted);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kUnknownGateKind) throw;
      problems.push_back(e.what());
    }
  }

  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += "\n  - " + p;
    throw Error(ErrorCode::kValidationError, std::to_string(problems.size()) +
                                                 " problem(s) in scenario:" + msg);
  }
  if (s.timing.t_signal >= s.timing.t_2q) {
    s.warnings.push_back("t_signal_ns (" + std::to_string(s.timing.t_signal) +
                         ") is not much less than t_2q_ns (" + std::to_string(s.timing.t_2q) +
                         "); failover will be slow relative to gates");
  }
}

}  // namespace

Scenario parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(col) + ": malformed JSON");
  }

  check_keys(root, "", {"topology", "circuit", "failures", "fidelity", "timing", "run"});
  Scenario s;
  s.source = {};
  const json* topo = find(root, "topology");
  if (!topo) field_error("topology", "required");
  parse_topology(*topo, s);
  const json* circ = find(root, "circuit");
  if (!circ) field_error("circuit", "required");
  parse_circuit_section(*circ, s);
  if (const json* v = find(root, "failures")) parse_failures(*v, s);
  if (const json* v = find(root, "fidelity")) parse_fidelity(*v, s);
  if (const json* v = find(root, "timing")) parse_timing(*v, s);
  if (const json* v = find(root, "run")) parse_run(*v, s);
  validate(s, base_dir);
  return s;
}

std::string scenario_to_config(const Scenario& s) {
  ordered_json j;
  j["topology"] = {{"n_qubits", s.n_qubits},
                   {"n_routers", s.n_routers},
                   {"mode", operating_mode_name(s.mode)}};
  auto& circuit = j["circuit"] = ordered_json::object();
  circuit[std::string(source_key(s.source.kind))] = s.source.value;
  if (s.source.size != 0) circuit["size"] = s.source.size;

  auto& failures = j["failures"] = ordered_json::object();
  failures["policy"] = policy_name(s.failures.policy);
  if (s.failures.policy != TargetPolicy::kFixed) failures["rate_per_ns"] = s.failures.rate;
  if (!s.horizon_auto) failures["horizon_ns"] = s.failures.horizon;
  if (s.failures.policy == TargetPolicy::kFixed) {
    auto& events = failures["events"] = ordered_json::array();
    for (const auto& ev : s.failures.fixed) {
      ordered_json e;
      e["at_ns"] = ev.at;
      if (const auto* l = std::get_if<LinkTarget>(&ev.target)) e["qubit"] = l->qubit.index + 1;
      e["router"] = target_router(ev.target).index + 1;
      events.push_back(std::move(e));
    }
  }

  auto& fidelity = j["fidelity"] = ordered_json::object();
  for (const auto& [kind, f] : s.fidelity.per_gate) fidelity[std::string(gate_kind_name(kind))] = f;
  j["timing"] = {{"t_1q_ns", s.timing.t_1q},
                 {"t_2q_ns", s.timing.t_2q},
                 {"t_signal_ns", s.timing.t_signal}};
  j["run"] = {{"seed", s.seed}, {"trials", s.trials}, {"threads", s.threads}};
  return j.dump(2) + "\n";
}

Nanos default_horizon(const Scenario& s, Nanos planned_makespan) {
  // Losing capacity can serialize the plan up to n_routers times; each
  // failover costs at most one aborted gate plus the signaling time.
  const double routers = static_cast<double>(s.n_routers);
  return (routers + 1.0) * planned_makespan + routers * (s.timing.t_2q + s.timing.t_signal);
}

FailureModel effective_failure_model(const Scenario& s, Nanos planned_makespan) {
  FailureModel m = s.failures;
  if (s.horizon_auto) m.horizon = default_horizon(s, planned_makespan);
  return m;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(trial));
}

TrialSummary summarize(const RunResult& r) {
  return {r.complete, r.reason, r.makespan, r.failovers, r.failures_applied, r.success};
}

RunResult run_trial(const Scenario& s, const Schedule& plan, std::size_t trial) {
  const Topology t = s.topology();
  const Rng base(trial_seed(s.seed, trial));
  Rng failure_rng = base.substream("failures");
  Rng noise_rng = base.substream("noise");
  const FailureModel model = effective_failure_model(s, plan.makespan());
  const auto events = sample_failures(model, t, failure_rng);
  RunOptions options;
  options.timing = s.timing;
  options.fidelity = s.fidelity;
  return run(plan, static_cast<std::size_t>(s.n_qubits), FabricState(t, s.mode, s.timing.t_signal),
             events, noise_rng, options);
}

Metrics aggregate(const std::vector<TrialSummary>& trials, const Schedule& s, const Scenario& sc) {
  Metrics m;
  m.trials = trials.size();
  double makespan_sum = 0.0;
  std::size_t failovers = 0;
  std::size_t successes = 0;
  for (const auto& t : trials) {
    if (t.complete) {
      ++m.completed;
      makespan_sum += t.makespan;
    }
    failovers += t.failovers;
    successes += t.success ? 1 : 0;
    if (t.reason == IncompleteReason::kNoBackupAvailable) ++m.incomplete_no_backup;
    if (t.reason == IncompleteReason::kNoRouteAvailable) ++m.incomplete_no_route;
  }
  const double n = static_cast<double>(std::max<std::size_t>(m.trials, 1));
  m.completion_rate = static_cast<double>(m.completed) / n;
  m.mean_makespan = m.completed ? makespan_sum / static_cast<double>(m.completed) : 0.0;
  m.mean_failovers = static_cast<double>(failovers) / n;
  m.empirical_success_rate = static_cast<double>(successes) / n;
  m.depth = s.depth;
  m.analytic_fidelity = analytic_fidelity(s, sc.fidelity);
  try {
    const Schedule star = schedule(sc.circuit, Topology(sc.n_qubits, 1), OperatingMode::kAllActive,
                                   sc.timing);
    m.depth_ratio = DepthRatio{star.depth, s.depth}.value();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientRouters) throw;
  }
  return m;
}

Report run_scenario(const Scenario& s) {
  Report report;
  report.scenario = s;
  report.schedule = schedule(s.circuit, s.topology(), s.mode, s.timing);
  report.trials.resize(s.trials);

  report.first_trial = run_trial(s, report.schedule, 0);
  report.trials[0] = summarize(report.first_trial);

  unsigned workers = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, s.trials));
  std::atomic<std::size_t> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < s.trials; i = next++) {
            report.trials[i] = summarize(run_trial(s, report.schedule, i));
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  report.metrics = aggregate(report.trials, report.schedule, s);
  return report;
}

Metrics monte_carlo(const Scenario& s) { return run_scenario(s).metrics; }

namespace {

ordered_json record(std::string_view kind) {
  ordered_json j;
  j["schema_version"] = kRecordsSchemaVersion;
  j["record"] = kind;
  return j;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
  const Scenario& s = r.scenario;
  const Metrics& m = r.metrics;
  if (format == ReportFormat::kRecords) {
    std::string out;
    auto line = [&out](const ordered_json& j) {
      out += j.dump();
      out += '\n';
    };
    auto scenario = record("scenario");
    scenario["config"] = ordered_json::parse(scenario_to_config(s));
    scenario["warnings"] = s.warnings;
    line(scenario);

    auto plan = record("schedule");
    plan["layers"] = r.schedule.layers.size();
    plan["depth"] = r.schedule.depth;
    plan["makespan_ns"] = r.schedule.makespan();
    line(plan);

    auto metrics = record("metrics");
    metrics["trials"] = m.trials;
    metrics["completed"] = m.completed;
    metrics["completion_rate"] = m.completion_rate;
    metrics["mean_makespan_ns"] = m.mean_makespan;
    metrics["mean_failovers"] = m.mean_failovers;
    metrics["depth"] = m.depth;
    metrics["depth_ratio"] = m.depth_ratio ? ordered_json(*m.depth_ratio) : ordered_json(nullptr);
    metrics["analytic_fidelity"] = m.analytic_fidelity;
    metrics["empirical_success_rate"] = m.empirical_success_rate;
    metrics["incomplete_no_backup"] = m.incomplete_no_backup;
    metrics["incomplete_no_route"] = m.incomplete_no_route;
    line(metrics);

    const RunResult& first = r.first_trial;
    auto trial = record("trial");
    trial["trial"] = 0;
    trial["complete"] = first.complete;
    trial["reason"] = incomplete_reason_name(first.reason);
    trial["makespan_ns"] = first.makespan;
    trial["failovers"] = first.failovers;
    trial["aborted_attempts"] = first.aborted_attempts;
    trial["analytic_fidelity"] = first.analytic_fidelity;
    line(trial);

    for (const auto& ev : first.trace) {
      auto e = record("event");
      e["trial"] = 0;
      const ordered_json fields = to_json(ev);
      for (const auto& [key, value] : fields.items()) e[key] = value;
      line(e);
    }
    return out;
  }

  std::ostringstream out;
  auto row = [&out](std::string_view name, const std::string& value) {
    out << "  " << name;
    for (std::size_t i = name.size(); i < 24; ++i) out << ' ';
    out << value << '\n';
  };
  out << "starfab report\n";
  row("topology", std::to_string(s.n_qubits) + " qubits, " + std::to_string(s.n_routers) +
                      " router(s), " + std::string(operating_mode_name(s.mode)));
  row("circuit", std::to_string(s.circuit.size()) + " gates (" +
                     std::to_string(s.circuit.multi_qubit_count()) + " multi-qubit)");
  row("trials", std::to_string(m.trials) + " (seed " + std::to_string(s.seed) + ")");
  row("depth", std::to_string(m.depth));
  row("depth_ratio", m.depth_ratio ? fmt(*m.depth_ratio) + " (single-star / this fabric)"
                                   : std::string("n/a (circuit needs more than one router)"));
  row("planned_makespan_ns", fmt(r.schedule.makespan()));
  row("completion_rate", fmt(m.completion_rate));
  row("mean_makespan_ns", fmt(m.mean_makespan));
  row("mean_failovers", fmt(m.mean_failovers));
  row("analytic_fidelity", fmt(m.analytic_fidelity));
  row("empirical_success", fmt(m.empirical_success_rate));
  row("incomplete", std::to_string(m.trials - m.completed) + " (NoBackupAvailable " +
                        std::to_string(m.incomplete_no_backup) + ", NoRouteAvailable " +
                        std::to_string(m.incomplete_no_route) + ")");
  for (const auto& w : s.warnings) out << "warning: " << w << '\n';
  return out.str();
}

Metrics parse_metrics_record(std::string_view records) {
  std::istringstream in{std::string(records)};
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (j.value("record", "") != "metrics") continue;
    if (j.at("schema_version").get<int>() != kRecordsSchemaVersion) {
      throw Error(ErrorCode::kParseError, "unsupported records schema version");
    }
    Metrics m;
    m.trials = j.at("trials").get<std::size_t>();
    m.completed = j.at("completed").get<std::size_t>();
    m.completion_rate = j.at("completion_rate").get<double>();
    m.mean_makespan = j.at("mean_makespan_ns").get<double>();
    m.mean_failovers = j.at("mean_failovers").get<double>();
    m.depth = j.at("depth").get<std::size_t>();
    if (!j.at("depth_ratio").is_null()) m.depth_ratio = j.at("depth_ratio").get<double>();
    m.analytic_fidelity = j.at("analytic_fidelity").get<double>();
    m.empirical_success_rate = j.at("empirical_success_rate").get<double>();
    m.incomplete_no_backup = j.at("incomplete_no_backup").get<std::size_t>();
    m.incomplete_no_route = j.at("incomplete_no_route").get<std::size_t>();
    return m;
  }
  throw Error(ErrorCode::kParseError, "no metrics record found");
}

}  // namespace starfab
