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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "oracles.h"

namespace starfab {
namespace {

QubitPair pair(std::uint32_t a, std::uint32_t b) { return {QubitId{a - 1}, QubitId{b - 1}}; }

TEST(Topology, BuildsCompleteStars) {
  EXPECT_EQ(build_topology(4, 1).links().size(), 4u);
  EXPECT_EQ(build_topology(4, 2).links().size(), 8u);
  EXPECT_EQ(build_topology(2, 1).links().size(), 2u);

  const Topology triple = build_topology(4, 3);
  for (std::uint32_t q = 0; q < 4; ++q) {
    for (std::uint32_t r = 0; r < 3; ++r) EXPECT_TRUE(triple.has_link(QubitId{q}, RouterId{r}));
  }
  EXPECT_FALSE(triple.has_link(QubitId{4}, RouterId{0}));
  EXPECT_FALSE(triple.has_link(QubitId{0}, RouterId{3}));
}

TEST(Topology, RejectsDegenerateFabrics) {
  for (auto [q, r] : {std::pair{1, 1}, std::pair{0, 2}, std::pair{4, 0}, std::pair{-3, 1}}) {
    try {
      build_topology(q, r);
      FAIL() << q << " qubits, " << r << " routers accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  }
}

TEST(Topology, QubitPairsAreLexicographic) {
  const auto pairs = qubit_pairs(build_topology(4, 1));
  const std::vector<QubitPair> expected = {pair(1, 2), pair(1, 3), pair(1, 4),
                                           pair(2, 3), pair(2, 4), pair(3, 4)};
  EXPECT_EQ(pairs, expected);
  EXPECT_EQ(qubit_pairs(build_topology(2, 1)).size(), 1u);
  EXPECT_EQ(qubit_pairs(build_topology(5, 1)).size(), 10u);
}

TEST(Topology, QubitPairCountMatchesBruteForce) {
  for (int n = 2; n <= 9; ++n) {
    const auto pairs = qubit_pairs(build_topology(n, 1));
    EXPECT_EQ(pairs.size(), testing::brute_force_pair_counts(n).pairs) << n;
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
    EXPECT_EQ(std::adjacent_find(pairs.begin(), pairs.end()), pairs.end());
  }
}

TEST(Topology, DoublePairsOfFourQubits) {
  const auto census = enumerate_double_pairs(4);
  EXPECT_EQ(census.total, 15u);
  EXPECT_EQ(census.disjoint, 3u);
  EXPECT_EQ(census.shared, 12u);
  EXPECT_EQ(census.list.size(), 15u);
}

TEST(Topology, DoublePairsSmallCases) {
  const auto three = enumerate_double_pairs(3);
  EXPECT_EQ(three.total, 3u);
  EXPECT_EQ(three.disjoint, 0u);
  EXPECT_EQ(three.shared, 3u);

  // Frozen from testing::brute_force_pair_counts(5).
  const auto five = enumerate_double_pairs(5);
  EXPECT_EQ(five.total, 45u);
  EXPECT_EQ(five.disjoint, 15u);
  EXPECT_EQ(five.shared, 30u);
}

TEST(Topology, DoublePairCensusMatchesOracleAndClosedForms) {
  for (int n = 2; n <= 8; ++n) {
    const auto census = enumerate_double_pairs(n);
    const auto oracle = testing::brute_force_pair_counts(n);
    EXPECT_EQ(census.total, oracle.total) << n;
    EXPECT_EQ(census.disjoint, oracle.disjoint) << n;
    EXPECT_EQ(census.shared, oracle.shared) << n;
    EXPECT_EQ(census.total, testing::binomial(testing::binomial(n, 2), 2)) << n;
    EXPECT_EQ(census.disjoint, 3 * testing::binomial(n, 4)) << n;
    EXPECT_EQ(census.shared + census.disjoint, census.total) << n;
  }
}

TEST(Topology, ClassifyDoublePair) {
  EXPECT_EQ(classify_double_pair(pair(1, 3), pair(2, 4)), PairClass::disjoint());
  EXPECT_EQ(classify_double_pair(pair(2, 3), pair(2, 4)), PairClass::shared_qubit(QubitId{1}));
  try {
    classify_double_pair(pair(1, 2), pair(1, 2));
    FAIL() << "identical pairs accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIdenticalPairs);
  }
  EXPECT_THROW(pair(3, 3), Error);
}

TEST(Topology, ClassifyIsSymmetric) {
  const auto pairs = qubit_pairs(build_topology(6, 1));
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      if (a == b) continue;
      EXPECT_EQ(classify_double_pair(a, b), classify_double_pair(b, a));
    }
  }
}

TEST(Topology, PairOrderIsNormalized) {
  EXPECT_EQ(pair(4, 1), pair(1, 4));
  EXPECT_EQ(pair(4, 1).first, QubitId{0});
}

TEST(Topology, EnumerationIsFast) {
  const auto start = std::chrono::steady_clock::now();
  enumerate_double_pairs(4);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::seconds(1));
}

}  // namespace
}  // namespace starfab
