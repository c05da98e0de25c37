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

// Scenario configuration documents. A document has three sections:
//   "system"   - system parameters in the format of maser/config.hpp
//   "scenario" - scenario-specific grids and switches
//   "solver"   - steady-state and time-evolution settings
// Resolution order: built-in preset, fast patch (--fast), user file
// (--config), command-line overrides (--n-reservoir).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maser/dynamics.hpp"
#include "maser/model.hpp"

namespace maser::tools {

using json = nlohmann::json;

struct RunOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = "out";
  std::optional<int> n_reservoir;
  int workers = 1;
  bool fast = false;
};

struct ResolvedRun {
  json doc;  // fully resolved document, echoed into the manifest
  SystemParams system;
  SteadyStateOptions steady;
  EvolveOptions evolve;
  const json& scenario() const { return doc.at("scenario"); }
};

// Parses JSON with // comments. Throws ConfigError.
json parse_document(const std::string& text, const std::string& origin);
json read_document(const std::filesystem::path& path);

ResolvedRun resolve_run(const std::string& preset, const std::string& fast_patch, const RunOptions& opts);

SystemParams system_from_json(const json& j);
json system_to_json(const SystemParams& p);

// Applies a JSON merge patch to the system section of `p`.
SystemParams patch_system(const SystemParams& p, const json& patch);

SteadyStateOptions steady_from_json(const json& j);
json steady_to_json(const SteadyStateOptions& o);
EvolveOptions evolve_from_json(const json& j);
json evolve_to_json(const EvolveOptions& o);

// A grid is an array of numbers or {"from", "to", "step"} (inclusive).
std::vector<double> grid_from_json(const json& j, const std::string& what);

// Typed accessors that report the offending key on failure.
double get_double(const json& obj, const std::string& key);
double get_double(const json& obj, const std::string& key, double fallback);
int get_int(const json& obj, const std::string& key, int fallback);
bool get_bool(const json& obj, const std::string& key, bool fallback);
std::string get_string(const json& obj, const std::string& key, const std::string& fallback);

}  // namespace maser::tools
