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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affekt {

// Machine-readable error kinds. The service maps these onto HTTP status codes.
enum class ErrorCode {
  MalformedDocument,
  SchemaViolation,
  DuplicateCategory,
  NoMatch,
  SraiDepthExceeded,
  InvalidFrame,
  OutOfRange,
  ParseError,
  DuplicateToken,
  BackendUnavailable,
  DimensionMismatch,
  InvalidSensitivity,
  UnknownGroup,
  SessionLimitExceeded,
  GroupMismatch,
  SessionClosed,
  NotUserTurn,
  DuplicatePhase,
  PhaseOrder,
  UnknownSession,
  EmptyTrace,
  EmptyInput,
  LengthMismatch,
  AllZeroDifferences,
  WrongArity,
  CorruptLog,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors tied to a position in an input file.
class LocatedError : public Error {
 public:
  LocatedError(ErrorCode code, std::string file, std::size_t line,
               const std::string& message)
      : Error(code, file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace affekt
