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

#include "config_json.hpp"

#include <iterator>

#include <nlohmann/json.hpp>

#include "dicke/error.hpp"
#include "dicke/io.hpp"

namespace dicke::cli {
namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void collect(const json& object, std::vector<std::string> parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : object.items()) {
    if (value.is_null()) continue;
    if (value.is_object()) {
      std::vector<std::string> nested = parents;
      nested.push_back(key);
      collect(value, std::move(nested), out);
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const json& v : value) item.inputs.push_back(scalar_text(v));
    } else {
      item.inputs.push_back(scalar_text(value));
    }
    out.push_back(std::move(item));
  }
}

json app_to_json(const CLI::App* app, bool default_also) {
  json out = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (results.size() == 1 && opt->get_expected_max() <= 1) {
        out[name] = results.front();
      } else {
        out[name] = results;
      }
    } else if (default_also && !opt->get_default_str().empty()) {
      out[name] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands({})) {
    json nested = app_to_json(sub, default_also);
    if (!nested.empty()) out[sub->get_name()] = std::move(nested);
  }
  return out;
}

}  // namespace

std::string ConfigJson::to_config(const CLI::App* app, bool default_also,
                                  bool /*write_description*/,
                                  std::string /*prefix*/) const {
  return app_to_json(app, default_also).dump(2) + "\n";
}

std::vector<CLI::ConfigItem> ConfigJson::from_config(std::istream& input) const {
  const std::string text{std::istreambuf_iterator<char>(input),
                         std::istreambuf_iterator<char>()};
  const json doc = parse_json_document(text, "config file");
  if (!doc.is_object()) throw ParseError("config file: top level must be an object");

  std::vector<CLI::ConfigItem> items;
  if (doc.contains("command") && doc["command"].is_string() &&
      doc.contains("config") && doc["config"].is_object()) {
    collect(doc["config"], {doc["command"].get<std::string>()}, items);
  } else {
    collect(doc, {}, items);
  }
  return items;
}

}  // namespace dicke::cli
