// Copyright 2026 The gIoM Authors.
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

#ifndef GIOM_CLI_H_
#define GIOM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace giom {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Entry point of the `giom` tool. Subcommands: gen-data, hash, match,
// evaluate, sweep, analyze. Returns 0 on success, 1 on a usage error and 2
// when a module rejects its input.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace giom

#endif  // GIOM_CLI_H_
