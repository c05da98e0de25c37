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

#include "maser_tools/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "maser/config.hpp"
#include "maser/errors.hpp"

namespace maser::tools {

json parse_document(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

json read_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

SystemParams system_from_json(const json& j) { return canonical_params(params_from_text(j.dump())); }

json system_to_json(const SystemParams& p) { return json::parse(params_to_text(p, false)); }

SystemParams patch_system(const SystemParams& p, const json& patch) {
  json doc = system_to_json(p);
  doc.merge_patch(patch);
  return system_from_json(doc);
}

double get_double(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

double get_double(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? get_double(obj, key) : fallback;
}

int get_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

SteadyStateMethod method_from_string(const std::string& s) {
  for (auto m : {SteadyStateMethod::kAuto, SteadyStateMethod::kDirect, SteadyStateMethod::kIterative,
                 SteadyStateMethod::kEvolution})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown steady-state method '" + s + "'");
}

}  // namespace

SteadyStateOptions steady_from_json(const json& j) {
  reject_unknown(j,
                 {"method", "direct_max_dim", "tolerance", "gmres_restart", "max_iterations", "evolution_fallback",
                  "fallback_max_time"},
                 "solver.steady");
  SteadyStateOptions o;
  o.method = method_from_string(get_string(j, "method", to_string(o.method)));
  o.direct_max_dim = get_int(j, "direct_max_dim", static_cast<int>(o.direct_max_dim));
  o.tolerance = get_double(j, "tolerance", o.tolerance);
  o.gmres_restart = get_int(j, "gmres_restart", o.gmres_restart);
  o.max_iterations = get_int(j, "max_iterations", o.max_iterations);
  o.evolution_fallback = get_bool(j, "evolution_fallback", o.evolution_fallback);
  o.fallback_max_time = get_double(j, "fallback_max_time", o.fallback_max_time);
  if (!(o.tolerance > 0.0)) throw ConfigError("solver.steady.tolerance must be positive");
  return o;
}

json steady_to_json(const SteadyStateOptions& o) {
  return {{"method", to_string(o.method)},
          {"direct_max_dim", o.direct_max_dim},
          {"tolerance", o.tolerance},
          {"gmres_restart", o.gmres_restart},
          {"max_iterations", o.max_iterations},
          {"evolution_fallback", o.evolution_fallback},
          {"fallback_max_time", o.fallback_max_time}};
}

EvolveOptions evolve_from_json(const json& j) {
  reject_unknown(j, {"rtol", "atol", "initial_step", "min_step", "max_steps"}, "solver.evolve");
  EvolveOptions o;
  o.rtol = get_double(j, "rtol", o.rtol);
  o.atol = get_double(j, "atol", o.atol);
  o.initial_step = get_double(j, "initial_step", o.initial_step);
  o.min_step = get_double(j, "min_step", o.min_step);
  if (j.contains("max_steps")) {
    if (!j.at("max_steps").is_number_integer()) throw ConfigError("'max_steps' must be an integer");
    o.max_steps = j.at("max_steps").get<long>();
  }
  if (!(o.rtol > 0.0) || !(o.atol > 0.0)) throw ConfigError("solver.evolve tolerances must be positive");
  return o;
}

json evolve_to_json(const EvolveOptions& o) {
  return {{"rtol", o.rtol},
          {"atol", o.atol},
          {"initial_step", o.initial_step},
          {"min_step", o.min_step},
          {"max_steps", o.max_steps}};
}

std::vector<double> grid_from_json(const json& j, const std::string& what) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError(what + ": grid entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    reject_unknown(j, {"from", "to", "step"}, what);
    const double from = get_double(j, "from"), to = get_double(j, "to"), step = get_double(j, "step");
    if (!(step > 0.0) || to < from) throw ConfigError(what + ": need step > 0 and to >= from");
    const long n = std::lround(std::floor((to - from) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) out.push_back(from + static_cast<double>(i) * step);
  } else {
    throw ConfigError(what + ": grid must be an array or {from, to, step}");
  }
  if (out.empty()) throw ConfigError(what + ": empty grid");
  return out;
}

ResolvedRun resolve_run(const std::string& preset, const std::string& fast_patch, const RunOptions& opts) {
  json doc = parse_document(preset, "built-in preset");
  if (opts.fast && !fast_patch.empty()) doc.merge_patch(parse_document(fast_patch, "built-in fast patch"));
  if (opts.config) doc.merge_patch(read_document(*opts.config));
  reject_unknown(doc, {"system", "scenario", "solver"}, "<root>");
  if (!doc.contains("system")) doc["system"] = json::object();
  if (!doc.contains("scenario")) doc["scenario"] = json::object();
  if (!doc.contains("solver")) doc["solver"] = json::object();
  if (opts.n_reservoir) {
    if (*opts.n_reservoir < 2) throw ConfigError("--n-reservoir must be >= 2");
    doc["system"]["reservoir"]["levels"] = *opts.n_reservoir;
  }
  const json& solver = doc.at("solver");
  reject_unknown(solver, {"steady", "evolve"}, "solver");

  ResolvedRun run;
  run.system = system_from_json(doc.at("system"));
  run.steady = steady_from_json(solver.contains("steady") ? solver.at("steady") : json::object());
  run.evolve = evolve_from_json(solver.contains("evolve") ? solver.at("evolve") : json::object());
  doc["system"] = system_to_json(run.system);
  doc["system"]["ideal_alignment"] = false;
  doc["solver"] = {{"steady", steady_to_json(run.steady)}, {"evolve", evolve_to_json(run.evolve)}};
  run.doc = std::move(doc);
  return run;
}

}  // namespace maser::tools
