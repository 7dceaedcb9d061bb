// Copyright 2026 The dicke-rbm Authors
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

// The dicke-rbm command-line tool as a library, so tests can drive it
// in-process.

#ifndef DICKE_TOOLS_CLI_HPP_
#define DICKE_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace dicke::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitCapacity = 4,
  kExitIo = 5,
  kExitTraining = 6,
};

// args excludes the program name. Normal output goes to out, diagnostics
// to err.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Metadata file written next to an artifact: the extension of path
// replaced by ".meta.json".
std::string metadata_path(const std::string& path);

}  // namespace dicke::cli

#endif  // DICKE_TOOLS_CLI_HPP_
