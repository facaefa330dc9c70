// Copyright 2026 The selfdeg Authors
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

#ifndef SELFDEG_CLI_HPP_
#define SELFDEG_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace selfdeg::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kUnsupported = 2,
  kInternal = 3,
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selfdeg::cli

#endif  // SELFDEG_CLI_HPP_
