// Copyright 2026 The sigverify Authors
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigverify {

enum class ErrorCode {
  // signal-core
  TooFewPoints,
  NonMonotonicTime,
  NegativePressure,
  LengthTooShort,
  BadWindow,
  // transforms
  SignalTooShort,
  LengthMismatch,
  TooManyLevels,
  EmptyInput,
  BadLength,
  // features
  TooShort,
  KTooLarge,
  DegenerateData,
  DimensionMismatch,
  NotFitted,
  // classifier
  SingleClass,
  NoConvergence,
  // datasets
  HeaderMismatch,
  BadColumnCount,
  NonNumericField,
  EmptyDataset,
  UnparsableFile,
  NotEnoughSamples,
  // general
  InvalidArgument,
  Io,
  Config,
  UnknownSigner,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `where()` carries the first offending sample index
/// or, for parsers, the 1-based line number.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> where = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        where_(where) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> where_;
};

}  // namespace sigverify
