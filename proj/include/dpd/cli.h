// Copyright 2026 The dpd Authors
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

#ifndef DPD_CLI_H_
#define DPD_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace dpd {

// Entry point of the `dpd` tool. `args` excludes the program name.
// Subcommands: run, gen, trials. Errors print one line
// "error: <kind>: <reason>" to `err` and return a nonzero code.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpd

#endif  // DPD_CLI_H_
