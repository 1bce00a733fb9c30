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

#include "starfab/topology.h"

#include <utility>

namespace starfab {

Topology::Topology(int n_qubits, int n_routers) {
  if (n_qubits < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a fabric needs at least 2 qubits");
  }
  if (n_routers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "a fabric needs at least 1 router");
  }
  n_qubits_ = static_cast<std::size_t>(n_qubits);
  n_routers_ = static_cast<std::size_t>(n_routers);
  links_.reserve(n_qubits_ * n_routers_);
  for (std::uint32_t q = 0; q < n_qubits_; ++q) {
    for (std::uint32_t r = 0; r < n_routers_; ++r) {
      links_.push_back({QubitId{q}, RouterId{r}});
    }
  }
}

Topology build_topology(int n_qubits, int n_routers) { return Topology(n_qubits, n_routers); }

QubitPair::QubitPair(QubitId a, QubitId b) : first(a), second(b) {
  if (a == b) {
    throw Error(ErrorCode::kDuplicateOperand, "a qubit pair needs two distinct qubits, got " +
                                                  label(a) + " twice");
  }
  if (second < first) std::swap(first, second);
}

std::vector<QubitPair> qubit_pairs(const Topology& t) {
  std::vector<QubitPair> pairs;
  const auto n = static_cast<std::uint32_t>(t.n_qubits());
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(QubitId{i}, QubitId{j});
    }
  }
  return pairs;
}

PairClass classify_double_pair(const QubitPair& p1, const QubitPair& p2) {
  if (p1 == p2) {
    throw Error(ErrorCode::kIdenticalPairs, "cannot classify " + label(p1.first) +
                                                label(p1.second) + " against itself");
  }
  for (QubitId q : {p1.first, p1.second}) {
    if (p2.contains(q)) return PairClass::shared_qubit(q);
  }
  return PairClass::disjoint();
}

DoublePairCensus enumerate_double_pairs(int n_qubits) {
  const Topology t(n_qubits, 1);
  const auto pairs = qubit_pairs(t);
  DoublePairCensus census;
  census.list.reserve(pairs.size() * (pairs.size() - 1) / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const PairClass cls = classify_double_pair(pairs[i], pairs[j]);
      if (cls.tag == PairClass::Tag::kDisjoint) {
        ++census.disjoint;
      } else {
        ++census.shared;
      }
      census.list.push_back({pairs[i], pairs[j], cls});
    }
  }
  census.total = census.list.size();
  return census;
}

}  // namespace starfab
