// Copyright 2026 The EntropyLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTROPYLENS_TOOLS_CLI_H_
#define ENTROPYLENS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace entropylens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRisk = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

// Runs one invocation; `args` excludes the program name. Options not given
// on the command line fall back to ENTROPYLENS_* environment variables.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropylens::cli

#endif  // ENTROPYLENS_TOOLS_CLI_H_
