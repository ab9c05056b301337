// Copyright 2026 The qrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace qrt {

/// Failure categories surfaced by the library. The CLI prints `name()`
/// verbatim, so the spellings are part of the external interface.
enum class ErrorKind {
  NotHermitian,
  NotPSD,
  BadTrace,
  DimMismatch,
  DomainError,
  EmptySampler,
  DimensionBlowup,
  NotFreeOperation,
  BadMeasurement,
  DimTooLarge,
  TruncationTooLossy,
  CutoffTooSmall,
  NotFound,
  EOutOfRange,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::BadTrace: return "BadTrace";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EmptySampler: return "EmptySampler";
    case ErrorKind::DimensionBlowup: return "DimensionBlowup";
    case ErrorKind::NotFreeOperation: return "NotFreeOperation";
    case ErrorKind::BadMeasurement: return "BadMeasurement";
    case ErrorKind::DimTooLarge: return "DimTooLarge";
    case ErrorKind::TruncationTooLossy: return "TruncationTooLossy";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::EOutOfRange: return "EOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qrt
