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

#include "starfab/circuit.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace starfab {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t operands;
  std::size_t params;
  std::size_t routers;
};

constexpr KindInfo kKinds[] = {
    {GateKind::kH, "H", 1, 0, 0},       {GateKind::kX, "X", 1, 0, 0},
    {GateKind::kZ, "Z", 1, 0, 0},       {GateKind::kS, "S", 1, 0, 0},
    {GateKind::kT, "T", 1, 0, 0},       {GateKind::kCZ, "CZ", 2, 0, 1},
    {GateKind::kSWAP, "SWAP", 2, 0, 1}, {GateKind::kCCZS, "CCZS", 3, 0, 2},
    {GateKind::kCCZSP, "CCZSP", 3, 3, 2},
};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw Error(ErrorCode::kUnknownGateKind, "unregistered gate kind");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "circuit line " + std::to_string(line) + ": " + what);
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line, "expected a positive integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(tok);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(line, "expected a number, got '" + std::string(tok) + "'");
  }
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

std::size_t operand_count(GateKind kind) { return info(kind).operands; }
std::size_t parameter_count(GateKind kind) { return info(kind).params; }
std::size_t router_demand(GateKind kind) { return info(kind).routers; }

bool Gate::touches(QubitId q) const {
  return std::find(operands.begin(), operands.end(), q) != operands.end();
}

Gate make_gate(std::size_t id, GateKind kind, std::vector<QubitId> operands,
               std::vector<double> params) {
  const auto& k = info(kind);
  if (operands.size() != k.operands) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(k.name) + " takes " + std::to_string(k.operands) + " operand(s), got " +
                    std::to_string(operands.size()));
  }
  if (params.size() != k.params) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(k.name) + " takes " + std::to_string(k.params) +
                    " parameter(s), got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < operands.size(); ++i) {
    for (std::size_t j = i + 1; j < operands.size(); ++j) {
      if (operands[i] == operands[j]) {
        throw Error(ErrorCode::kDuplicateOperand,
                    std::string(k.name) + " repeats operand " + label(operands[i]));
      }
    }
  }
  return Gate{id, kind, std::move(operands), std::move(params)};
}

const Gate& Circuit::add(GateKind kind, std::vector<QubitId> operands, std::vector<double> params) {
  for (QubitId q : operands) {
    if (q.index >= n_qubits_) {
      throw Error(ErrorCode::kOperandOutOfRange,
                  label(q) + " on a " + std::to_string(n_qubits_) + "-qubit circuit");
    }
  }
  gates_.push_back(make_gate(gates_.size(), kind, std::move(operands), std::move(params)));
  return gates_.back();
}

std::size_t Circuit::multi_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [](const Gate& g) { return is_multi_qubit(g.kind); }));
}

Circuit parse_circuit(std::string_view text, std::size_t n_qubits) {
  Circuit circuit(n_qubits);
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 3 || tokens.size() > 4) {
      parse_fail(line_no, "expected `id kind qubits [params]`");
    }

    const std::size_t id = parse_index(tokens[0], line_no);
    if (id != circuit.size() + 1) {
      parse_fail(line_no, "gate ids must be dense and start at 1; expected " +
                              std::to_string(circuit.size() + 1) + ", got " + tokens[0]);
    }
    const auto kind = parse_gate_kind(tokens[1]);
    if (!kind) {
      throw Error(ErrorCode::kUnknownGateKind,
                  "circuit line " + std::to_string(line_no) + ": '" + tokens[1] + "'");
    }
    std::vector<QubitId> operands;
    for (std::string_view tok : split(tokens[2], ',')) {
      const std::size_t q = parse_index(tok, line_no);
      if (q == 0) parse_fail(line_no, "qubit labels are 1-based");
      operands.push_back(QubitId{static_cast<std::uint32_t>(q - 1)});
    }
    std::vector<double> params;
    if (tokens.size() == 4) {
      for (std::string_view tok : split(tokens[3], ',')) params.push_back(parse_real(tok, line_no));
    }
    try {
      circuit.add(*kind, std::move(operands), std::move(params));
    } catch (const Error& e) {
      throw Error(e.code(), "circuit line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return circuit;
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  for (const Gate& g : c.gates()) {
    out << g.id + 1 << ' ' << gate_kind_name(g.kind) << ' ';
    for (std::size_t i = 0; i < g.operands.size(); ++i) {
      out << (i ? "," : "") << g.operands[i].index + 1;
    }
    if (!g.params.empty()) {
      out << ' ';
      for (std::size_t i = 0; i < g.params.size(); ++i) out << (i ? "," : "") << g.params[i];
    }
    out << '\n';
  }
  return out.str();
}

namespace {

QubitId q(std::uint32_t one_based) { return QubitId{one_based - 1}; }

void require_qubits(std::string_view name, std::size_t have, std::size_t need) {
  if (have < need) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " needs at least " +
                                                 std::to_string(need) + " qubits");
  }
}

}  // namespace

Circuit bell_circuit(std::size_t n_qubits) {
  require_qubits("bell", n_qubits, 2);
  // Bell pair on Q1 and Q3 (Q2 on a two-qubit register).
  const QubitId partner = n_qubits >= 3 ? q(3) : q(2);
  Circuit c(n_qubits);
  c.add(GateKind::kH, {q(1)});
  c.add(GateKind::kH, {partner});
  c.add(GateKind::kCZ, {q(1), partner});
  c.add(GateKind::kH, {partner});
  return c;
}

Circuit ghz_circuit(std::size_t n_qubits) {
  require_qubits("ghz", n_qubits, 2);
  Circuit c(n_qubits);
  c.add(GateKind::kH, {q(1)});
  for (std::uint32_t k = 2; k <= n_qubits; ++k) {
    c.add(GateKind::kH, {q(k)});
    c.add(GateKind::kCZ, {q(k - 1), q(k)});
    c.add(GateKind::kH, {q(k)});
  }
  return c;
}

Circuit ladder_circuit(std::size_t n_qubits, std::size_t n_gates) {
  require_qubits("ladder", n_qubits, 4);
  Circuit c(n_qubits);
  for (std::size_t i = 0; i < n_gates; ++i) {
    if (i % 2 == 0) {
      c.add(GateKind::kCZ, {q(1), q(4)});
    } else {
      c.add(GateKind::kCZ, {q(2), q(3)});
    }
  }
  return c;
}

Circuit cczs_demo_circuit(std::size_t n_qubits) {
  require_qubits("cczs_demo", n_qubits, 4);
  Circuit c(n_qubits);
  c.add(GateKind::kH, {q(2)});
  c.add(GateKind::kX, {q(3)});
  c.add(GateKind::kCCZS, {q(2), q(3), q(4)});
  return c;
}

Circuit builtin_circuit(std::string_view name, std::size_t n_qubits, std::size_t size) {
  if (name == "bell") return bell_circuit(n_qubits);
  if (name == "ghz") return ghz_circuit(n_qubits);
  if (name == "ladder") return ladder_circuit(n_qubits, size);
  if (name == "cczs_demo") return cczs_demo_circuit(n_qubits);
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in circuit '" + std::string(name) + "'");
}

}  // namespace starfab
