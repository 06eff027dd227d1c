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

#include <iosfwd>
#include <string>
#include <vector>

#include "sigverify/error.hpp"

namespace sigverify {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,        // success, or verify decided genuine
  kExitForgery = 1,   // verify decided forgery
  kExitIo = 2,
  kExitConfig = 3,    // also bad command-line arguments
  kExitData = 4,
  kExitConvergence = 5,
};

int exit_code_for(ErrorCode code);

/// Parses `args` (without the program name) and runs one subcommand:
/// synth, train, verify, evaluate or config.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigverify
