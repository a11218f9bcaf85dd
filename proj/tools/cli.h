// Copyright 2026 The aqec-lab Authors
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

#ifndef AQEC_TOOLS_CLI_H
#define AQEC_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace aqec::cli {

constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kVerified = 0,
    kViolation = 1,
    kUsageError = 2,
};

/// Runs the command line `args` (without the program name), writing
/// reports to `out` or the --out file and diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace aqec::cli

#endif
