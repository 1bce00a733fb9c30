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

#include "starfab/qsim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace starfab {

namespace {

constexpr Amplitude kI{0.0, 1.0};

GateMatrix diag(std::initializer_list<Amplitude> d) {
  GateMatrix m(d.size());
  std::size_t i = 0;
  for (Amplitude a : d) {
    m.at(i, i) = a;
    ++i;
  }
  return m;
}

GateMatrix controlled(const GateMatrix& block) {
  const std::size_t half = block.dim();
  GateMatrix m = GateMatrix::identity(2 * half);
  for (std::size_t r = 0; r < half; ++r) {
    for (std::size_t c = 0; c < half; ++c) m.at(half + r, half + c) = block.at(r, c);
  }
  return m;
}

}  // namespace

GateMatrix::GateMatrix(std::size_t dim) : dim_(dim), m_(dim * dim, Amplitude{0.0, 0.0}) {}

GateMatrix::GateMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), m_(std::move(entries)) {
  if (m_.size() != dim_ * dim_) {
    throw Error(ErrorCode::kInvalidArgument, "matrix entry count does not match dimension");
  }
}

GateMatrix GateMatrix::identity(std::size_t dim) {
  GateMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

std::size_t GateMatrix::n_qubits() const { return static_cast<std::size_t>(std::countr_zero(dim_)); }

GateMatrix GateMatrix::adjoint() const {
  GateMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
  }
  return out;
}

GateMatrix GateMatrix::operator*(const GateMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::kInvalidArgument, "matrix dimension mismatch");
  GateMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Amplitude a = at(r, k);
      if (a == Amplitude{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) += a * rhs.at(k, c);
    }
  }
  return out;
}

double GateMatrix::unitarity_error() const {
  const GateMatrix p = adjoint() * *this;
  return p.max_abs_diff(identity(dim_));
}

double GateMatrix::max_abs_diff(const GateMatrix& other) const {
  if (other.dim_ != dim_) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  return worst;
}

GateMatrix gate_matrix(GateKind kind, std::span<const double> params) {
  if (params.size() != parameter_count(kind)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(gate_kind_name(kind)) + " takes " +
                                                 std::to_string(parameter_count(kind)) +
                                                 " parameter(s)");
  }
  const double h = std::numbers::sqrt2 / 2.0;
  switch (kind) {
    case GateKind::kH: return GateMatrix(2, {h, h, h, -h});
    case GateKind::kX: return GateMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case GateKind::kZ: return diag({1.0, -1.0});
    case GateKind::kS: return diag({1.0, kI});
    case GateKind::kT: return diag({1.0, std::polar(1.0, std::numbers::pi / 4.0)});
    case GateKind::kCZ: return diag({1.0, 1.0, 1.0, -1.0});
    case GateKind::kSWAP: {
      GateMatrix m(4);
      m.at(0, 0) = m.at(1, 2) = m.at(2, 1) = m.at(3, 3) = 1.0;
      return m;
    }
    case GateKind::kCCZS: return cczs_matrix();
    case GateKind::kCCZSP: return cczs_param_matrix(params[0], params[1], params[2]);
  }
  throw Error(ErrorCode::kUnknownGateKind, "no matrix for gate kind");
}

GateMatrix cczs_matrix() {
  return controlled(gate_matrix(GateKind::kCZ) * gate_matrix(GateKind::kSWAP));
}

GateMatrix cczs_param_matrix(double theta, double phi, double gamma) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  GateMatrix block(4);
  block.at(0, 0) = 1.0;
  block.at(1, 1) = c;
  block.at(1, 2) = -std::polar(1.0, phi) * s;
  block.at(2, 1) = std::polar(1.0, -phi) * s;
  block.at(2, 2) = c;
  block.at(3, 3) = -std::polar(1.0, gamma);
  return controlled(block);
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxSimQubits) {
    throw Error(ErrorCode::kTooLarge, "state vectors are capped at " +
                                          std::to_string(kMaxSimQubits) + " qubits, got " +
                                          std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : StateVector(n_qubits) {
  if (amplitudes.size() != amps_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "amplitude count must be 2^n");
  }
  amps_ = std::move(amplitudes);
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.size()) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

double StateVector::max_abs_diff(const StateVector& other) const {
  if (other.size() != size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
  }
  return worst;
}

void apply_matrix(StateVector& s, const GateMatrix& m, std::span<const QubitId> operands) {
  const std::size_t k = operands.size();
  if (m.dim() != (std::size_t{1} << k)) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimension does not match operand count");
  }
  std::size_t mask = 0;
  for (QubitId q : operands) {
    if (q.index >= s.n_qubits()) {
      throw Error(ErrorCode::kOperandOutOfRange,
                  label(q) + " on a " + std::to_string(s.n_qubits()) + "-qubit state");
    }
    const std::size_t bit = std::size_t{1} << q.index;
    if (mask & bit) throw Error(ErrorCode::kDuplicateOperand, "operand " + label(q) + " repeated");
    mask |= bit;
  }

  const std::size_t dim = m.dim();
  // offsets[l] is the amplitude-index displacement of local basis state l.
  std::vector<std::size_t> offsets(dim, 0);
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      if (l >> (k - 1 - j) & 1u) offsets[l] |= std::size_t{1} << operands[j].index;
    }
  }

  std::vector<std::size_t> sorted_bits;
  for (QubitId q : operands) sorted_bits.push_back(q.index);
  std::sort(sorted_bits.begin(), sorted_bits.end());

  std::vector<Amplitude> in(dim), out(dim);
  const std::size_t outer = s.size() >> k;
  for (std::size_t i = 0; i < outer; ++i) {
    // Spread i over the non-operand bit positions.
    std::size_t base = i;
    for (std::size_t b : sorted_bits) {
      const std::size_t low = base & ((std::size_t{1} << b) - 1);
      base = ((base >> b) << (b + 1)) | low;
    }
    for (std::size_t l = 0; l < dim; ++l) in[l] = s[base | offsets[l]];
    for (std::size_t r = 0; r < dim; ++r) {
      Amplitude acc{};
      for (std::size_t c = 0; c < dim; ++c) acc += m.at(r, c) * in[c];
      out[r] = acc;
    }
    for (std::size_t l = 0; l < dim; ++l) s[base | offsets[l]] = out[l];
  }
}

void apply_gate(StateVector& s, const Gate& g) {
  apply_matrix(s, gate_matrix(g.kind, g.params), g.operands);
}

std::string dump_state(const StateVector& s) {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i]) < kStateTolerance) continue;
    for (std::size_t q = 0; q < s.n_qubits(); ++q) out += (i >> q & 1u) ? '1' : '0';
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", s[i].real(), s[i].imag());
    out += buf;
  }
  return out;
}

FidelityModel FidelityModel::defaults() {
  FidelityModel m;
  for (GateKind k : {GateKind::kCZ, GateKind::kSWAP, GateKind::kCCZS, GateKind::kCCZSP}) {
    m.per_gate[k] = kDefaultCzFidelity;
  }
  return m;
}

double FidelityModel::fidelity(GateKind kind) const {
  if (const auto it = per_gate.find(kind); it != per_gate.end()) return it->second;
  return is_multi_qubit(kind) ? kDefaultCzFidelity : 1.0;
}

void FidelityModel::validate() const {
  for (const auto& [kind, f] : per_gate) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::kValidationError, "fidelity of " + std::string(gate_kind_name(kind)) +
                                                   " must lie in (0, 1]");
    }
  }
}

double analytic_fidelity(std::span<const Gate> executed, const FidelityModel& m) {
  double f = 1.0;
  for (const Gate& g : executed) {
    if (is_multi_qubit(g.kind)) f *= m.fidelity(g.kind);
  }
  return f;
}

double analytic_fidelity(const Schedule& s, const FidelityModel& m) {
  std::vector<Gate> gates;
  for (const auto& layer : s.layers) {
    for (const auto& sg : layer) gates.push_back(sg.gate);
  }
  std::sort(gates.begin(), gates.end(), [](const Gate& a, const Gate& b) { return a.id < b.id; });
  return analytic_fidelity(gates, m);
}

bool sample_success(double fidelity, Rng& rng) { return rng.bernoulli(fidelity); }

}  // namespace starfab
