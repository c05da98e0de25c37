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

#include "maser_tools/output.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "maser/errors.hpp"

namespace maser::tools {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void ArtifactWriter::write_json(const std::string& name, const json& doc, const std::string& kind,
                                const std::string& description) {
  std::ofstream out(dir_ / name);
  if (!out) throw ConfigError("cannot write " + (dir_ / name).string());
  out << doc.dump(2) << '\n';
  artifacts_.push_back({{"path", name}, {"format", "json"}, {"kind", kind}, {"description", description}});
}

void ArtifactWriter::write_csv(const std::string& name, const std::vector<std::string>& header,
                               const std::vector<std::vector<double>>& rows, const std::string& kind,
                               const std::string& description) {
  std::ofstream out(dir_ / name);
  if (!out) throw ConfigError("cannot write " + (dir_ / name).string());
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (std::isfinite(row[i])) out << row[i];
      else if (std::isnan(row[i])) out << "nan";
      else out << (row[i] > 0 ? "inf" : "-inf");
    }
    out << '\n';
  }
  artifacts_.push_back({{"path", name},
                        {"format", "csv"},
                        {"kind", kind},
                        {"description", description},
                        {"columns", header},
                        {"rows", rows.size()}});
}

void ArtifactWriter::write_manifest(const std::string& scenario, const json& resolved_config,
                                    const json& summary) const {
  const json manifest = {{"schema", "maser-manifest/1"},
                         {"scenario", scenario},
                         {"config", resolved_config},
                         {"summary", summary},
                         {"artifacts", artifacts_}};
  std::ofstream out(dir_ / "manifest.json");
  if (!out) throw ConfigError("cannot write manifest in " + dir_.string());
  out << manifest.dump(2) << '\n';
}

}  // namespace maser::tools
