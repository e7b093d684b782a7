// Copyright 2026 The sbmrd Authors.
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
//
// Command-line front end. Everything goes through RunCli so the commands can
// be exercised in-process.
//
// Exit codes: 0 success, 1 computation failure (infeasible distortion,
// unattainable tolerance), 2 bad configuration or usage, 3 oracle did not
// converge.

#ifndef SBMRD_CLI_H_
#define SBMRD_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sbmrd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;

// `args` excludes the program name. JSON and CSV go to `out` unless --out
// names a file; diagnostics go to `err`. `--config -` reads from `in`.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace sbmrd

#endif  // SBMRD_CLI_H_
