// Copyright 2026 The Ultraball Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ultraball {

enum class ErrorKind {
  InvalidInput,
  EmptySubset,
  NegativeRadius,
  ForeignBall,
  EqualBalls,
  FamilyTooSmall,
  MalformedTree,
  BadParams,
  NegativeInput,
  CenterNotInSpace,
  InvalidPresentation,
  ConfigError,
  InvariantViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::NegativeRadius: return "NegativeRadius";
    case ErrorKind::ForeignBall: return "ForeignBall";
    case ErrorKind::EqualBalls: return "EqualBalls";
    case ErrorKind::FamilyTooSmall: return "FamilyTooSmall";
    case ErrorKind::MalformedTree: return "MalformedTree";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::CenterNotInSpace: return "CenterNotInSpace";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Domain error raised by every precondition failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ultraball
