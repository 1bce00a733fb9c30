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

#include "starfab/fabric.h"

#include <gtest/gtest.h>

#include <random>

namespace starfab {
namespace {

constexpr QubitId Q(std::uint32_t label) { return QubitId{label - 1}; }
constexpr RouterId R(std::uint32_t label) { return RouterId{label - 1}; }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

void expect_clean(const FabricState& s) {
  const auto problems = s.check_invariants();
  EXPECT_TRUE(problems.empty()) << (problems.empty() ? "" : problems.front());
}

TEST(Fabric, InitialStateSingleActive) {
  const FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  EXPECT_EQ(s.router_mode(R(1)), RouterMode::kActive);
  EXPECT_EQ(s.router_mode(R(2)), RouterMode::kDormant);
  for (std::uint32_t q = 1; q <= 4; ++q) {
    for (std::uint32_t r = 1; r <= 2; ++r) EXPECT_EQ(s.switch_state(Q(q), R(r)), SwitchState::kOff);
  }
  EXPECT_EQ(s.active_router(), R(1));
  expect_clean(s);
}

TEST(Fabric, InitialStateAllActive) {
  const FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  EXPECT_EQ(s.count_routers(RouterMode::kActive), 2u);
  for (std::uint32_t q = 1; q <= 4; ++q) {
    for (std::uint32_t r = 1; r <= 2; ++r) EXPECT_EQ(s.switch_state(Q(q), R(r)), SwitchState::kOff);
  }
  expect_clean(s);
}

TEST(Fabric, InitialStateStar) {
  const FabricState s = init_fabric(build_topology(4, 1), OperatingMode::kSingleActive);
  EXPECT_EQ(s.router_mode(R(1)), RouterMode::kActive);
  EXPECT_EQ(s.count_routers(RouterMode::kDormant), 0u);
}

TEST(Fabric, SetSwitchTransitions) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.set_switch(Q(1), R(1), SwitchState::kOn);
  EXPECT_EQ(s.switch_state(Q(1), R(1)), SwitchState::kOn);
  EXPECT_EQ(code_of([&] { s.set_switch(Q(1), R(2), SwitchState::kOn); }),
            ErrorCode::kSwitchOnDormantRouter);
  s.set_switch(Q(1), R(1), SwitchState::kOff);
  EXPECT_EQ(s.switch_state(Q(1), R(1)), SwitchState::kOff);
}

TEST(Fabric, SwitchOffUnderReservationRejected) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  EXPECT_EQ(code_of([&] { s.set_switch(Q(1), R(1), SwitchState::kOff); }),
            ErrorCode::kReservationViolation);
}

TEST(Fabric, ReservePairTurnsOnExactlyItsSwitches) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  const Reservation res = s.reserve_pair(Q(1), Q(3), R(1), 7, 200);
  EXPECT_EQ(s.switch_state(Q(1), R(1)), SwitchState::kOn);
  EXPECT_EQ(s.switch_state(Q(3), R(1)), SwitchState::kOn);
  EXPECT_EQ(s.switch_state(Q(2), R(1)), SwitchState::kOff);
  EXPECT_EQ(s.switch_state(Q(4), R(1)), SwitchState::kOff);
  EXPECT_EQ(res.gate_id, 7u);
  EXPECT_EQ(res.end - res.start, 200);
  EXPECT_TRUE(s.gate_in_flight(7));
  expect_clean(s);
}

TEST(Fabric, ReserveForcesStraySwitchesOff) {
  FabricState s = init_fabric(build_topology(4, 1), OperatingMode::kSingleActive);
  s.set_switch(Q(2), R(1), SwitchState::kOn);
  s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  EXPECT_EQ(s.switch_state(Q(2), R(1)), SwitchState::kOff);
}

TEST(Fabric, SimultaneousPairsOnSeparateRouters) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  s.reserve_pair(Q(2), Q(4), R(2), 1, 200);
  EXPECT_TRUE(s.gate_in_flight(0));
  EXPECT_TRUE(s.gate_in_flight(1));
  EXPECT_EQ(s.reservations().size(), 2u);
  expect_clean(s);
}

TEST(Fabric, OnePairPerRouter) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.reserve_pair(Q(1), Q(4), R(1), 0, 200);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(2), Q(3), R(1), 1, 200); }), ErrorCode::kRouterBusy);
}

TEST(Fabric, ReserveErrorPaths) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(2), R(2), 0, 200); }), ErrorCode::kRouterNotActive);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(5), R(1), 0, 200); }), ErrorCode::kNoSuchLink);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(2), R(3), 0, 200); }), ErrorCode::kNoSuchLink);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(2), Q(2), R(1), 0, 200); }), ErrorCode::kDuplicateOperand);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(2), R(1), 0, 0); }), ErrorCode::kInvalidArgument);
  s.apply_failure(LinkTarget{Q(2), R(1)});
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(2), R(1), 0, 200); }), ErrorCode::kLinkFailed);
}

TEST(Fabric, QubitBusyOnSameRouter) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  s.reserve_pair(Q(1), Q(2), R(1), 0, 200);
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(3), R(1), 1, 200); }), ErrorCode::kQubitBusyOnRouter);
  // A shared control may hold a switch ON toward two routers at once.
  s.reserve_pair(Q(1), Q(3), R(2), 0, 200);
  EXPECT_EQ(s.switch_state(Q(1), R(1)), SwitchState::kOn);
  EXPECT_EQ(s.switch_state(Q(1), R(2)), SwitchState::kOn);
  expect_clean(s);
}

TEST(Fabric, ReleaseReturnsToIdle) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  const Reservation res = s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  s.advance_to(200);
  s.release(res);
  for (std::uint32_t q = 1; q <= 4; ++q) EXPECT_EQ(s.switch_state(Q(q), R(1)), SwitchState::kOff);
  EXPECT_FALSE(s.gate_in_flight(0));
  EXPECT_EQ(code_of([&] { s.release(res); }), ErrorCode::kUnknownReservation);
}

TEST(Fabric, ReleaseRemovesOnlyTheNamedReservation) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  const Reservation a = s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  const Reservation b = s.reserve_pair(Q(2), Q(4), R(2), 1, 200);
  s.release(a);
  ASSERT_EQ(s.reservations().size(), 1u);
  EXPECT_EQ(s.reservations().front(), b);
  EXPECT_TRUE(s.gate_in_flight(1));
  EXPECT_EQ(s.switch_state(Q(2), R(2)), SwitchState::kOn);
}

TEST(Fabric, RouterFailureAbortsInFlightPair) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.reserve_pair(Q(1), Q(3), R(1), 4, 200);
  s.advance_to(120);
  const auto aborted = s.apply_failure(RouterTarget{R(1)});
  EXPECT_EQ(aborted, std::vector<std::size_t>{4});
  EXPECT_EQ(s.router_mode(R(1)), RouterMode::kFailed);
  EXPECT_TRUE(s.reservations().empty());
  for (std::uint32_t q = 1; q <= 4; ++q) EXPECT_EQ(s.switch_state(Q(q), R(1)), SwitchState::kOff);
  expect_clean(s);
}

TEST(Fabric, LinkFailureLeavesRouterUsable) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  const auto aborted = s.apply_failure(LinkTarget{Q(2), R(1)});
  EXPECT_TRUE(aborted.empty());
  EXPECT_TRUE(s.link_failed(Q(2), R(1)));
  EXPECT_EQ(s.router_mode(R(1)), RouterMode::kActive);
  EXPECT_EQ(code_of([&] { s.set_switch(Q(2), R(1), SwitchState::kOn); }), ErrorCode::kLinkFailed);
  s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  EXPECT_TRUE(s.gate_in_flight(0));
}

TEST(Fabric, LinkFailureAbortsOnlyPairsUsingIt) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  s.reserve_pair(Q(1), Q(2), R(1), 0, 200);
  s.reserve_pair(Q(3), Q(4), R(2), 1, 200);
  EXPECT_EQ(s.apply_failure(LinkTarget{Q(2), R(1)}), std::vector<std::size_t>{0});
  EXPECT_TRUE(s.gate_in_flight(1));
  EXPECT_TRUE(s.apply_failure(LinkTarget{Q(3), R(1)}).empty());
  EXPECT_TRUE(s.gate_in_flight(1));
}

TEST(Fabric, DormantRouterFailureAbortsNothing) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  EXPECT_TRUE(s.apply_failure(RouterTarget{R(2)}).empty());
  EXPECT_EQ(s.router_mode(R(2)), RouterMode::kFailed);
  EXPECT_TRUE(s.gate_in_flight(0));
}

TEST(Fabric, FailureIsIdempotent) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.apply_failure(RouterTarget{R(2)});
  const std::size_t logged = s.log().size();
  EXPECT_TRUE(s.apply_failure(RouterTarget{R(2)}).empty());
  EXPECT_EQ(s.log().size(), logged);
  EXPECT_EQ(code_of([&] { s.set_switch(Q(1), R(2), SwitchState::kOff); }),
            ErrorCode::kSwitchOnFailedRouter);
}

TEST(Fabric, FailoverPromotesBackupAfterSignalTime) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive, 20);
  s.advance_to(120);
  s.apply_failure(RouterTarget{R(1)});
  const FailoverResult fo = s.failover();
  EXPECT_EQ(fo.activated, R(2));
  EXPECT_EQ(fo.delay, 20);
  EXPECT_EQ(s.router_mode(R(2)), RouterMode::kActive);
  EXPECT_EQ(s.ready_at(R(2)), 140);
  EXPECT_FALSE(s.router_ready(R(2)));
  EXPECT_EQ(code_of([&] { s.reserve_pair(Q(1), Q(3), R(2), 0, 200); }), ErrorCode::kRouterNotActive);
  s.advance_to(140);
  EXPECT_TRUE(s.router_ready(R(2)));
  s.reserve_pair(Q(1), Q(3), R(2), 0, 200);
  expect_clean(s);
}

TEST(Fabric, FailoverWithoutBackup) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.apply_failure(RouterTarget{R(2)});
  s.apply_failure(RouterTarget{R(1)});
  EXPECT_EQ(code_of([&] { s.failover(); }), ErrorCode::kNoBackupAvailable);

  FabricState star = init_fabric(build_topology(4, 1), OperatingMode::kSingleActive);
  star.apply_failure(RouterTarget{R(1)});
  EXPECT_EQ(code_of([&] { star.failover(); }), ErrorCode::kNoBackupAvailable);
}

TEST(Fabric, FailoverOnTripleStarPicksLowestIndex) {
  FabricState s = init_fabric(build_topology(4, 3), OperatingMode::kSingleActive);
  s.apply_failure(RouterTarget{R(1)});
  EXPECT_EQ(s.failover().activated, R(2));
  EXPECT_EQ(s.router_mode(R(3)), RouterMode::kDormant);
  s.apply_failure(RouterTarget{R(2)});
  EXPECT_EQ(s.failover().activated, R(3));
  expect_clean(s);
}

TEST(Fabric, FailoverPreconditions) {
  FabricState healthy = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  EXPECT_EQ(code_of([&] { healthy.failover(); }), ErrorCode::kInvalidState);
  FabricState all = init_fabric(build_topology(4, 2), OperatingMode::kAllActive);
  all.apply_failure(RouterTarget{R(1)});
  EXPECT_EQ(code_of([&] { all.failover(); }), ErrorCode::kInvalidState);
}

TEST(Fabric, ClockNeverMovesBackwards) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  s.advance_to(100);
  s.advance_to(100);
  EXPECT_EQ(code_of([&] { s.advance_to(50); }), ErrorCode::kInvariantViolation);
}

TEST(Fabric, EveryTransitionIsLogged) {
  FabricState s = init_fabric(build_topology(4, 2), OperatingMode::kSingleActive);
  const Reservation res = s.reserve_pair(Q(1), Q(3), R(1), 0, 200);
  s.release(res);
  s.apply_failure(RouterTarget{R(1)});
  s.failover();
  std::vector<std::string> kinds;
  for (const auto& e : s.log().records()) kinds.push_back(e.kind);
  for (const char* k : {"reserve", "release", "failover"}) {
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), k), kinds.end()) << k;
  }
}

// Random legal operation sequences never break the structural invariants.
TEST(FabricProperty, RandomOperationsKeepInvariants) {
  std::mt19937_64 gen(2024);
  for (int round = 0; round < 300; ++round) {
    const int nq = 2 + static_cast<int>(gen() % 5);
    const int nr = 1 + static_cast<int>(gen() % 3);
    const auto mode = gen() % 2 ? OperatingMode::kAllActive : OperatingMode::kSingleActive;
    FabricState s = init_fabric(build_topology(nq, nr), mode);
    Nanos t = 0;
    std::size_t gate = 0;
    for (int step = 0; step < 40; ++step) {
      t += static_cast<double>(gen() % 50);
      s.advance_to(t);
      const QubitId a{static_cast<std::uint32_t>(gen() % nq)};
      const QubitId b{static_cast<std::uint32_t>(gen() % nq)};
      const RouterId r{static_cast<std::uint32_t>(gen() % nr)};
      try {
        switch (gen() % 5) {
          case 0:
          case 1:
            s.reserve_pair(a, b, r, gate++, 200);
            break;
          case 2:
            if (!s.reservations().empty()) s.release(s.reservations()[gen() % s.reservations().size()]);
            break;
          case 3:
            if (gen() % 2) {
              s.apply_failure(RouterTarget{r});
            } else {
              s.apply_failure(LinkTarget{a, r});
            }
            break;
          case 4:
            s.failover();
            break;
        }
      } catch (const Error& e) {
        ASSERT_NE(e.code(), ErrorCode::kInvariantViolation);
      }
      const auto problems = s.check_invariants();
      ASSERT_TRUE(problems.empty()) << problems.front();
      for (const auto& res : s.reservations()) {
        EXPECT_EQ(s.switch_state(res.first, res.router), SwitchState::kOn);
        EXPECT_EQ(s.switch_state(res.second, res.router), SwitchState::kOn);
        EXPECT_TRUE(s.gate_in_flight(res.gate_id));
      }
    }
  }
}

}  // namespace
}  // namespace starfab
