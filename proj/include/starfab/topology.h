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
#include <vector>

#include "starfab/common.h"

namespace starfab {

struct Link {
  QubitId qubit;
  RouterId router;
  auto operator<=>(const Link&) const = default;
};

// Complete multi-star fabric: every qubit has exactly one link to every
// router. One router is the star, two the double-star, three the triple-star.
class Topology {
 public:
  Topology(int n_qubits, int n_routers);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_routers() const { return n_routers_; }
  const std::vector<Link>& links() const { return links_; }

  bool contains(QubitId q) const { return q.index < n_qubits_; }
  bool contains(RouterId r) const { return r.index < n_routers_; }
  bool has_link(QubitId q, RouterId r) const { return contains(q) && contains(r); }

  // Dense index of the (q, r) link, q-major.
  std::size_t link_index(QubitId q, RouterId r) const {
    return static_cast<std::size_t>(q.index) * n_routers_ + r.index;
  }

  bool operator==(const Topology&) const = default;

 private:
  std::size_t n_qubits_;
  std::size_t n_routers_;
  std::vector<Link> links_;
};

Topology build_topology(int n_qubits, int n_routers);

// Unordered qubit pair, stored with first < second.
struct QubitPair {
  QubitId first;
  QubitId second;

  QubitPair(QubitId a, QubitId b);
  bool contains(QubitId q) const { return first == q || second == q; }
  auto operator<=>(const QubitPair&) const = default;
};

std::vector<QubitPair> qubit_pairs(const Topology& t);

struct PairClass {
  enum class Tag { kDisjoint, kSharedQubit };
  Tag tag = Tag::kDisjoint;
  std::optional<QubitId> shared;

  static PairClass disjoint() { return {}; }
  static PairClass shared_qubit(QubitId q) { return {Tag::kSharedQubit, q}; }
  bool operator==(const PairClass&) const = default;
};

PairClass classify_double_pair(const QubitPair& p1, const QubitPair& p2);

struct DoublePair {
  QubitPair first;
  QubitPair second;
  PairClass cls;
};

struct DoublePairCensus {
  std::size_t total = 0;
  std::size_t disjoint = 0;
  std::size_t shared = 0;
  std::vector<DoublePair> list;
};

DoublePairCensus enumerate_double_pairs(int n_qubits);

}  // namespace starfab
