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

// Named scenarios behind the CLI subcommands. Each scenario owns a built-in
// preset document and an optional patch applied in fast mode.

#include <string>
#include <vector>

#include "maser_tools/output.hpp"
#include "maser_tools/run_config.hpp"

namespace maser::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitTruncation = 4;

struct ScenarioContext {
  const ResolvedRun& run;
  const RunOptions& opts;
  ArtifactWriter& out;
  json summary = json::object();
  bool truncation_flag = false;
};

using ScenarioFn = void (*)(ScenarioContext&);

struct ScenarioDef {
  std::string name;
  std::string help;
  std::string preset;
  std::string fast_patch;
  ScenarioFn run;
};

const std::vector<ScenarioDef>& scenario_registry();
const ScenarioDef* find_scenario(const std::string& name);

// Resolves the configuration, runs the scenario and writes the manifest.
// Returns kExitOk or kExitTruncation; configuration and solver failures
// propagate as exceptions.
int run_scenario(const ScenarioDef& def, const RunOptions& opts);

// Maps an exception from run_scenario to a process exit code.
int exit_code_for(const std::exception& e);

}  // namespace maser::tools
