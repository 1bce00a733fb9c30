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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starfab/common.h"

namespace starfab {

// CCZSP is the parametrized controlled-CZS family (theta, phi, gamma); plain
// CCZS is the literal controlled-(CZ.SWAP).
enum class GateKind { kH, kX, kZ, kS, kT, kCZ, kSWAP, kCCZS, kCCZSP };

std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

std::size_t operand_count(GateKind kind);
std::size_t parameter_count(GateKind kind);
// Routers a gate holds while it executes: 0 for 1q, 1 for CZ/SWAP, 2 for CCZS.
std::size_t router_demand(GateKind kind);
inline bool is_multi_qubit(GateKind kind) { return operand_count(kind) > 1; }

// For CCZS the operands are (control, target1, target2).
struct Gate {
  std::size_t id = 0;
  GateKind kind = GateKind::kH;
  std::vector<QubitId> operands;
  std::vector<double> params;

  bool touches(QubitId q) const;
  bool operator==(const Gate&) const = default;
};

Gate make_gate(std::size_t id, GateKind kind, std::vector<QubitId> operands,
               std::vector<double> params = {});

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  // Appends a gate with the next dense id. Throws on bad operands.
  const Gate& add(GateKind kind, std::vector<QubitId> operands, std::vector<double> params = {});

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  std::size_t multi_qubit_count() const;

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
};

// Circuit text: one gate per line, `id kind q[,q,q] [p,p,p]`, 1-based ids and
// qubit labels. '#' starts a comment.
Circuit parse_circuit(std::string_view text, std::size_t n_qubits);
std::string format_circuit(const Circuit& c);

// Built-in workloads. `size` is the gate count for ladder and ignored otherwise.
Circuit bell_circuit(std::size_t n_qubits);
Circuit ghz_circuit(std::size_t n_qubits);
Circuit ladder_circuit(std::size_t n_qubits, std::size_t n_gates);
Circuit cczs_demo_circuit(std::size_t n_qubits);
Circuit builtin_circuit(std::string_view name, std::size_t n_qubits, std::size_t size);

}  // namespace starfab
