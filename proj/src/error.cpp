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

#include "sigverify/error.hpp"

namespace sigverify {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::NegativePressure: return "NegativePressure";
    case ErrorCode::LengthTooShort: return "LengthTooShort";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotFitted: return "NotFitted";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::BadColumnCount: return "BadColumnCount";
    case ErrorCode::NonNumericField: return "NonNumericField";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::UnparsableFile: return "UnparsableFile";
    case ErrorCode::NotEnoughSamples: return "NotEnoughSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Config: return "Config";
    case ErrorCode::UnknownSigner: return "UnknownSigner";
  }
  return "Unknown";
}

}  // namespace sigverify
