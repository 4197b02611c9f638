//
// Copyright 2026 The dpfl Authors
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
//

// Command-line front end. Subcommands: gen, metrics, sample, tail, quantile,
// bound, audit-dp, check-family, certificate, experiment.

#ifndef DPFL_CLI_H_
#define DPFL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dpfl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitConstraint = 4;

// Runs one command. `args` excludes the program name. Results go to `out`
// (JSON by default, CSV with --format csv); failures print one diagnostic
// line to `err`. Returns the process exit code.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace dpfl

#endif  // DPFL_CLI_H_
