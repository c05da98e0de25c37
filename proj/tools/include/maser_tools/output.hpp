// Copyright 2026 The maser-sim Authors
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

#pragma once

// Output directory handling: JSON and CSV artifacts plus a manifest that lists
// them together with the resolved configuration.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace maser::tools {

using json = nlohmann::json;

// Non-finite values become null.
json num(double v);
json num_array(const std::vector<double>& v);

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  void write_json(const std::string& name, const json& doc, const std::string& kind,
                  const std::string& description);
  void write_csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows, const std::string& kind,
                 const std::string& description);

  // manifest.json: scenario name, resolved config, summary and artifact list.
  void write_manifest(const std::string& scenario, const json& resolved_config, const json& summary) const;

 private:
  std::filesystem::path dir_;
  json artifacts_ = json::array();
};

}  // namespace maser::tools
