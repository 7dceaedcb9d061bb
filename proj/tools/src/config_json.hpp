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

// CLI11 config formatter for JSON files.
//
// Two layouts are accepted. A plain config maps option names to values,
// with one nested object per subcommand:
//
//   {"threads": 1, "train": {"epochs": 500, "seed": 7}}
//
// A metadata file written by any subcommand ({"command": ..., "config":
// {...}, ...}) applies its "config" object to that subcommand, so a run can
// be repeated from its own metadata.

#ifndef DICKE_TOOLS_CONFIG_JSON_HPP_
#define DICKE_TOOLS_CONFIG_JSON_HPP_

#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace dicke::cli {

class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also,
                        bool write_description,
                        std::string prefix) const override;
  // Throws dicke::ParseError on malformed JSON.
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace dicke::cli

#endif  // DICKE_TOOLS_CONFIG_JSON_HPP_
