// Copyright 2026 The gamecert Authors.
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

#ifndef GAMECERT_TOOLS_CLI_HPP_
#define GAMECERT_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace gamecert::cli {

// Process exit codes.
inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitInfeasible = 3;

// Runs one command. `args` excludes the program name. Reports go to `out`
// unless -o is given; messages go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gamecert::cli

#endif  // GAMECERT_TOOLS_CLI_HPP_
