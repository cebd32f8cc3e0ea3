// Copyright 2026 The sgrl Authors
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

#ifndef SGRL_TOOLS_CLI_HPP_
#define SGRL_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace sgrl::tools {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,  // a claim failed or the input is well-formed but invalid
  kExitInput = 2,   // malformed flags or files
};

// Runs `sgrl <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sgrl::tools

#endif  // SGRL_TOOLS_CLI_HPP_
