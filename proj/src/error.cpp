// Copyright 2026 The Affekt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "affekt/error.hpp"

namespace affekt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DuplicateCategory: return "DuplicateCategory";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::SraiDepthExceeded: return "SraiDepthExceeded";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateToken: return "DuplicateToken";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSensitivity: return "InvalidSensitivity";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::SessionLimitExceeded: return "SessionLimitExceeded";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::SessionClosed: return "SessionClosed";
    case ErrorCode::NotUserTurn: return "NotUserTurn";
    case ErrorCode::DuplicatePhase: return "DuplicatePhase";
    case ErrorCode::PhaseOrder: return "PhaseOrder";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace affekt
