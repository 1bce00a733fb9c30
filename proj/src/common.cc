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

#include "starfab/common.h"

namespace starfab {

std::string label(QubitId q) { return "Q" + std::to_string(q.index + 1); }
std::string label(RouterId r) { return "R" + std::to_string(r.index + 1); }

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIdenticalPairs: return "IdenticalPairs";
    case ErrorCode::kNoSuchLink: return "NoSuchLink";
    case ErrorCode::kLinkFailed: return "LinkFailed";
    case ErrorCode::kSwitchOnDormantRouter: return "SwitchOnDormantRouter";
    case ErrorCode::kSwitchOnFailedRouter: return "SwitchOnFailedRouter";
    case ErrorCode::kReservationViolation: return "ReservationViolation";
    case ErrorCode::kRouterBusy: return "RouterBusy";
    case ErrorCode::kRouterNotActive: return "RouterNotActive";
    case ErrorCode::kQubitBusyOnRouter: return "QubitBusyOnRouter";
    case ErrorCode::kUnknownReservation: return "UnknownReservation";
    case ErrorCode::kNoBackupAvailable: return "NoBackupAvailable";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kInsufficientRouters: return "InsufficientRouters";
    case ErrorCode::kOperandOutOfRange: return "OperandOutOfRange";
    case ErrorCode::kDuplicateOperand: return "DuplicateOperand";
    case ErrorCode::kUnknownGateKind: return "UnknownGateKind";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace starfab
