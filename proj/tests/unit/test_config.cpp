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


#include <doctest.h>

#include <filesystem>
#include <random>

#include "maser/config.hpp"
#include "maser/errors.hpp"
#include "test_util.hpp"

using namespace maser;

TEST_CASE("saving and loading reproduces identical parameters") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SystemParams p = canonical_params(testing::random_small_system(rng));
    if (trial % 2) p.variant = InteractionVariant::kUnityLowering;
    if (trial % 3 == 0) p.drive_convention = DriveConvention::kFull;
    const SystemParams q = params_from_text(params_to_text(p));
    CHECK(q == p);
    CHECK(params_to_text(q) == params_to_text(p));
  }
  const auto path = std::filesystem::temp_directory_path() / "maser_config_roundtrip.json";
  const SystemParams p = canonical_params(optimal_params(60));
  save_params(path, p);
  CHECK(load_params(path) == p);
  std::filesystem::remove(path);
}

TEST_CASE("the written file starts with a documentation header") {
  const std::string text = params_to_text(optimal_params());
  CHECK(text.rfind("//", 0) == 0);
  CHECK(text.find("kappa_per_us") != std::string::npos);
  CHECK(params_to_text(optimal_params(), false).front() == '{');
}

TEST_CASE("missing keys fall back to defaults and comments are accepted") {
  const SystemParams p = params_from_text(R"(// only the couplings
{
  "reservoir": {"g_mhz": 8.0, "levels": 12},  // comment
  "auxiliary": {"g_mhz": 15.0}
})");
  CHECK(to_mhz(p.g_r) == doctest::Approx(8.0));
  CHECK(to_mhz(p.g_a) == doctest::Approx(15.0));
  CHECK(p.dims.reservoir == 12);
  CHECK(p.kappa_a == SystemParams{}.kappa_a);
}

TEST_CASE("ideal alignment overrides cavity and drive frequencies") {
  const SystemParams p = params_from_text(R"({"transmon": {"f_ge_mhz": 5000, "anharmonicity_mhz": -300},
    "drive": {"f_mhz": 1.0}, "ideal_alignment": true})");
  CHECK(to_mhz(p.omega_d) == doctest::Approx(4850.0));
  CHECK(to_mhz(p.omega_a) == doctest::Approx(4700.0));
  CHECK(to_mhz(p.omega_r) == doctest::Approx(5000.0));
}

TEST_CASE("malformed documents raise ConfigError") {
  CHECK_THROWS_AS(params_from_text("{"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"transmon": {"gama_per_us": 1}})"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"cavity": {}})"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"reservoir": {"levels": 2.5}})"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"reservoir": {"g_mhz": "six"}})"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"interaction": "sideways"})"), ConfigError);
  CHECK_THROWS_AS(params_from_text(R"({"transmon": {"anharmonicity_mhz": 200}})"), ConfigError);
  CHECK_THROWS_AS(load_params("/nonexistent/maser.json"), ConfigError);
}
