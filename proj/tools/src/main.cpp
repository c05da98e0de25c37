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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "maser/errors.hpp"
#include "maser_tools/run_config.hpp"
#include "maser_tools/scenarios.hpp"

int main(int argc, char** argv) {
  using namespace maser::tools;
  CLI::App app{"Single-atom maser simulation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "maser 0.1.0");

  std::string config, out;
  int n_reservoir = 0, workers = 1;
  bool fast = false, print_config = false;
  app.add_option("--config", config, "JSON configuration file (// comments allowed)")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (default: out/<subcommand>)");
  app.add_option("--n-reservoir", n_reservoir, "reservoir Hilbert dimension override");
  app.add_option("--workers", workers, "number of worker threads for independent points")->check(CLI::PositiveNumber);
  app.add_flag("--fast", fast, "reduced truncations and grids");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  for (const auto& def : scenario_registry()) app.add_subcommand(def.name, def.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const ScenarioDef* def = find_scenario(app.get_subcommands().front()->get_name());
  RunOptions opts;
  if (!config.empty()) opts.config = config;
  opts.out = out.empty() ? std::filesystem::path("out") / def->name : std::filesystem::path(out);
  if (n_reservoir != 0) opts.n_reservoir = n_reservoir;
  opts.workers = workers;
  opts.fast = fast;

  try {
    if (print_config) {
      std::cout << resolve_run(def->preset, def->fast_patch, opts).doc.dump(2) << '\n';
      return kExitOk;
    }
    const int code = run_scenario(*def, opts);
    std::cerr << def->name << ": results in " << opts.out.string() << '\n';
    if (code == kExitTruncation)
      std::cerr << def->name << ": reservoir truncation flagged, see manifest.json summary\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << def->name << ": error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
