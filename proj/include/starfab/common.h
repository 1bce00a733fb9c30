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

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace starfab {

// Simulated time in nanoseconds.
using Nanos = double;

struct QubitId {
  std::uint32_t index = 0;
  auto operator<=>(const QubitId&) const = default;
};

struct RouterId {
  std::uint32_t index = 0;
  auto operator<=>(const RouterId&) const = default;
};

// Reports use the 1-based labels Q1..Qn and R1..Rn.
std::string label(QubitId q);
std::string label(RouterId r);

enum class ErrorCode {
  kInvalidArgument,
  kIdenticalPairs,
  kNoSuchLink,
  kLinkFailed,
  kSwitchOnDormantRouter,
  kSwitchOnFailedRouter,
  kReservationViolation,
  kRouterBusy,
  kRouterNotActive,
  kQubitBusyOnRouter,
  kUnknownReservation,
  kNoBackupAvailable,
  kInvalidState,
  kInsufficientRouters,
  kOperandOutOfRange,
  kDuplicateOperand,
  kUnknownGateKind,
  kTooLarge,
  kParseError,
  kValidationError,
  kInvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace starfab
