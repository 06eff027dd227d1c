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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sigverify {

/// Shortest decimal that round-trips to the same double; "inf"/"-inf"/"nan"
/// for non-finite values.
std::string format_number(double v);

/// Whole-field decimal parse; nullopt on trailing junk or empty input.
std::optional<double> parse_double(std::string_view field);

std::string_view trim(std::string_view s);

/// Splits on any run of spaces or tabs, dropping empty fields.
std::vector<std::string_view> split_whitespace(std::string_view line);

/// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> split_on(std::string_view line, char sep);

}  // namespace sigverify
