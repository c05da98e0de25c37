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

#include "maser/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace maser {

using nlohmann::json;

const char* const kConfigHeader =
    "// maser system configuration\n"
    "//\n"
    "// Frequencies (*_mhz) are linear frequencies f = omega/2pi in MHz.\n"
    "// Rates (*_per_us) are decay rates in 1/us.\n"
    "// levels: Hilbert-space truncation of each subsystem (Fock levels 0..levels-1).\n"
    "// drive.convention: \"half\" for a drive term (Omega/2)(b + b^dag), \"full\" for\n"
    "//   Omega (b + b^dag).\n"
    "// interaction: \"standard\" or \"unity_lowering\" (reservoir coupling with unit\n"
    "//   matrix elements).\n"
    "// ideal_alignment: when true, the cavity and drive frequencies are derived from\n"
    "//   the transmon (reservoir on g-e, auxiliary on e-f, drive at f_gf/2) and any\n"
    "//   f_mhz given for them is ignored.\n";

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("section '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.contains(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in section '" + where + "'");
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
  return v.get<int>();
}

const json& section(const json& doc, const char* name) {
  static const json empty = json::object();
  return doc.contains(name) ? doc.at(name) : empty;
}

}  // namespace

SystemParams params_from_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  reject_unknown(doc, {"transmon", "reservoir", "auxiliary", "drive", "interaction", "ideal_alignment"},
                 "<root>");
  const json& t = section(doc, "transmon");
  const json& r = section(doc, "reservoir");
  const json& a = section(doc, "auxiliary");
  const json& d = section(doc, "drive");
  reject_unknown(t, {"f_ge_mhz", "anharmonicity_mhz", "gamma_per_us", "gamma_phi_per_us", "levels"},
                 "transmon");
  reject_unknown(r, {"f_mhz", "g_mhz", "kappa_per_us", "levels"}, "reservoir");
  reject_unknown(a, {"f_mhz", "g_mhz", "kappa_per_us", "levels"}, "auxiliary");
  reject_unknown(d, {"f_mhz", "amplitude_mhz", "convention"}, "drive");

  const SystemParams def;
  SystemParams p;
  p.omega_ge = mhz(get_number(t, "f_ge_mhz", to_mhz(def.omega_ge)));
  p.alpha = mhz(get_number(t, "anharmonicity_mhz", to_mhz(def.alpha)));
  p.gamma = get_number(t, "gamma_per_us", def.gamma);
  p.gamma_phi = get_number(t, "gamma_phi_per_us", def.gamma_phi);
  p.dims.transmon = get_int(t, "levels", def.dims.transmon);

  p.omega_r = mhz(get_number(r, "f_mhz", to_mhz(def.omega_r)));
  p.g_r = mhz(get_number(r, "g_mhz", to_mhz(def.g_r)));
  p.kappa_r = get_number(r, "kappa_per_us", def.kappa_r);
  p.dims.reservoir = get_int(r, "levels", def.dims.reservoir);

  p.omega_a = mhz(get_number(a, "f_mhz", to_mhz(def.omega_a)));
  p.g_a = mhz(get_number(a, "g_mhz", to_mhz(def.g_a)));
  p.kappa_a = get_number(a, "kappa_per_us", def.kappa_a);
  p.dims.auxiliary = get_int(a, "levels", def.dims.auxiliary);

  p.omega_d = mhz(get_number(d, "f_mhz", to_mhz(def.omega_d)));
  p.drive = mhz(get_number(d, "amplitude_mhz", to_mhz(def.drive)));
  if (d.contains("convention")) {
    if (!d.at("convention").is_string()) throw ConfigError("'drive.convention' must be a string");
    p.drive_convention = drive_convention_from_string(d.at("convention").get<std::string>());
  }

  if (doc.contains("interaction")) {
    if (!doc.at("interaction").is_string()) throw ConfigError("'interaction' must be a string");
    p.variant = interaction_variant_from_string(doc.at("interaction").get<std::string>());
  }
  if (doc.contains("ideal_alignment")) {
    if (!doc.at("ideal_alignment").is_boolean()) throw ConfigError("'ideal_alignment' must be a boolean");
    if (doc.at("ideal_alignment").get<bool>()) p = ideal_config(p);
  }
  p.validate();
  return p;
}

std::string params_to_text(const SystemParams& p, bool with_header) {
  json doc = {
      {"transmon",
       {{"f_ge_mhz", to_mhz(p.omega_ge)},
        {"anharmonicity_mhz", to_mhz(p.alpha)},
        {"gamma_per_us", p.gamma},
        {"gamma_phi_per_us", p.gamma_phi},
        {"levels", p.dims.transmon}}},
      {"reservoir",
       {{"f_mhz", to_mhz(p.omega_r)},
        {"g_mhz", to_mhz(p.g_r)},
        {"kappa_per_us", p.kappa_r},
        {"levels", p.dims.reservoir}}},
      {"auxiliary",
       {{"f_mhz", to_mhz(p.omega_a)},
        {"g_mhz", to_mhz(p.g_a)},
        {"kappa_per_us", p.kappa_a},
        {"levels", p.dims.auxiliary}}},
      {"drive",
       {{"f_mhz", to_mhz(p.omega_d)},
        {"amplitude_mhz", to_mhz(p.drive)},
        {"convention", to_string(p.drive_convention)}}},
      {"interaction", to_string(p.variant)},
  };
  std::string out = with_header ? std::string(kConfigHeader) : std::string();
  out += doc.dump(2);
  out += '\n';
  return out;
}

SystemParams canonical_params(SystemParams p) {
  for (int i = 0; i < 8; ++i) {
    SystemParams q = params_from_text(params_to_text(p, false));
    if (q == p) return p;
    p = q;
  }
  return p;
}

SystemParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_text(ss.str());
}

void save_params(const std::filesystem::path& path, const SystemParams& p) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << params_to_text(p);
}

}  // namespace maser
