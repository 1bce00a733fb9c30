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

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "starfab/circuit.h"
#include "starfab/rng.h"
#include "starfab/scheduler.h"

namespace starfab {

using Amplitude = std::complex<double>;

inline constexpr double kStateTolerance = 1e-12;
inline constexpr std::size_t kMaxSimQubits = 20;

// Dense square matrix, row-major. For a k-qubit gate on operands
// (o_0, ..., o_{k-1}) the local basis index is o_0 o_1 ... o_{k-1} read as a
// binary number, so o_0 is the most significant bit. CCZS's 8x8 matrix is
// therefore block-diagonal in its control.
class GateMatrix {
 public:
  explicit GateMatrix(std::size_t dim);
  GateMatrix(std::size_t dim, std::vector<Amplitude> entries);

  static GateMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t n_qubits() const;
  Amplitude& at(std::size_t row, std::size_t col) { return m_[row * dim_ + col]; }
  const Amplitude& at(std::size_t row, std::size_t col) const { return m_[row * dim_ + col]; }
  const std::vector<Amplitude>& entries() const { return m_; }

  GateMatrix adjoint() const;
  GateMatrix operator*(const GateMatrix& rhs) const;
  // Largest elementwise deviation of U^dagger U from the identity.
  double unitarity_error() const;
  bool is_unitary(double tol = kStateTolerance) const { return unitarity_error() <= tol; }
  double max_abs_diff(const GateMatrix& other) const;

  bool operator==(const GateMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Amplitude> m_;
};

GateMatrix gate_matrix(GateKind kind, std::span<const double> params = {});

// Identity on control=|0>, CZ.SWAP on the targets when control=|1>.
GateMatrix cczs_matrix();

// Parametrized controlled-CZS: its control-1 block is
// [[1,0,0,0],[0,cos(t/2),-e^{ip}sin(t/2),0],[0,e^{-ip}sin(t/2),cos(t/2),0],[0,0,0,-e^{ig}]].
GateMatrix cczs_param_matrix(double theta, double phi, double gamma);

class StateVector {
 public:
  // |0...0> on n qubits; qubit 0 is the least significant bit of an index.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  static StateVector basis(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  double max_abs_diff(const StateVector& other) const;

  bool operator==(const StateVector&) const = default;

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

void apply_matrix(StateVector& s, const GateMatrix& m, std::span<const QubitId> operands);
void apply_gate(StateVector& s, const Gate& g);

// One line per amplitude with magnitude >= 1e-12: `bitstring re im`, where the
// bitstring lists Q1 first.
std::string dump_state(const StateVector& s);

struct FidelityModel {
  std::map<GateKind, double> per_gate;

  static FidelityModel defaults();  // 0.96 for every multi-qubit kind
  double fidelity(GateKind kind) const;
  void validate() const;
  bool operator==(const FidelityModel&) const = default;
};

inline constexpr double kDefaultCzFidelity = 0.96;

// Product of per-gate fidelities over the multi-qubit gates.
double analytic_fidelity(const Schedule& s, const FidelityModel& m);
double analytic_fidelity(std::span<const Gate> executed, const FidelityModel& m);

// Whole-circuit success drawn as a Bernoulli trial with the given probability.
bool sample_success(double fidelity, Rng& rng);

}  // namespace starfab
