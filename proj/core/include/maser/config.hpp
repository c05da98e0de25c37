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

// SystemParams <-> structured text configuration (JSON with // comments).
// On disk, frequencies are linear in MHz and rates are in 1/us; conversion to
// rad/us happens here and nowhere else.

#include <filesystem>
#include <string>
#include <string_view>

#include "maser/model.hpp"

namespace maser {

// Header comment written at the top of every saved configuration.
extern const char* const kConfigHeader;

// Parses a full system configuration document. Unknown keys are rejected.
SystemParams params_from_text(std::string_view text);

// Serialises with the documentation header when `with_header` is set.
std::string params_to_text(const SystemParams& p, bool with_header = true);

// Fixed point of the text round trip: saving the result and loading it back
// gives identical parameters.
SystemParams canonical_params(SystemParams p);

SystemParams load_params(const std::filesystem::path& path);
void save_params(const std::filesystem::path& path, const SystemParams& p);

}  // namespace maser
