// Copyright 2026 The stabgs Authors
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


#ifndef STABGS_TOOLS_COMMANDS_HPP
#define STABGS_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace stabgs::cli {

/// Runs one `stabgs` invocation; `args` excludes the program name. The
/// payload goes to `out`, diagnostics and the run manifest (unless
/// `--manifest FILE` is given) to `err`. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace stabgs::cli

#endif
