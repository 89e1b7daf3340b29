// Copyright 2026 The QSDC Authors
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

#ifndef QSDC_TOOLS_CLI_COMMANDS_H
#define QSDC_TOOLS_CLI_COMMANDS_H

#include <iosfwd>

namespace qsdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

/// Parses argv, runs one command and writes its report. Reports go to
/// `out` unless --out names a file; diagnostics and usage go to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsdc::cli

#endif  // QSDC_TOOLS_CLI_COMMANDS_H
