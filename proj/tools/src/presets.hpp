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

// Built-in scenario documents. Units follow the configuration format:
// frequencies in MHz (f = omega/2pi), rates in 1/us, times in us.

namespace maser::tools::presets {

inline constexpr const char* kEvolve = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0, "levels": 4},
    "reservoir": {"g_mhz": 0, "kappa_per_us": 0, "levels": 2},
    "auxiliary": {"g_mhz": 0, "kappa_per_us": 138, "levels": 2},
    "drive": {"amplitude_mhz": 25},
    "ideal_alignment": true
  },
  "scenario": {
    "t_end_us": 3.0,
    "samples": 1201,
    "initial_levels": [0, 0, 0],
    // each panel is a patch on "system"
    "panels": [
      {"name": "upper", "system": {}},
      {"name": "middle", "system": {"transmon": {"gamma_per_us": 1.0}}},
      {"name": "lower", "system": {"transmon": {"gamma_per_us": 1.0}, "auxiliary": {"g_mhz": 8.0}}}
    ]
  }
})";
inline constexpr const char* kEvolveFast = R"({"scenario": {"t_end_us": 1.5, "samples": 601}})";

inline constexpr const char* kOptimum = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 6.5, "kappa_per_us": 0.31, "levels": 60},
    "auxiliary": {"g_mhz": 23.5, "kappa_per_us": 138, "levels": 2},
    "drive": {"amplitude_mhz": 25},
    "ideal_alignment": true
  },
  "scenario": {"truncation_check": false}
})";
inline constexpr const char* kOptimumFast = R"({"system": {"reservoir": {"levels": 25}}})";

inline constexpr const char* kSpectroscopy = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 15, "kappa_per_us": 0.2, "levels": 30},
    "auxiliary": {"g_mhz": 15, "kappa_per_us": 128, "levels": 2},
    "drive": {"amplitude_mhz": 20},
    "ideal_alignment": true
  },
  "scenario": {
    // offset of the drive frequency from f_gf/2
    "drive_offset_mhz": {"from": -40, "to": 40, "step": 1},
    "sample_times_us": [1.0, 2.0],
    "transient": true,
    "truncation_check": true
  },
  "solver": {"evolve": {"rtol": 1e-6, "atol": 1e-8}}
})";
inline constexpr const char* kSpectroscopyFast = R"({
  "system": {"reservoir": {"levels": 12}},
  "scenario": {"drive_offset_mhz": {"from": -40, "to": 40, "step": 4}}
})";

inline constexpr const char* kCoupling = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"kappa_per_us": 0.2, "levels": 40},
    "auxiliary": {"kappa_per_us": 138, "levels": 2},
    "ideal_alignment": true
  },
  "scenario": {
    "g_r_mhz": {"from": 1, "to": 16, "step": 1},
    "g_a_mhz": {"from": 1, "to": 31, "step": 2},
    "drive_mhz": [15, 20],
    "truncation_check": true
  }
})";
inline constexpr const char* kCouplingFast = R"({
  "system": {"reservoir": {"levels": 12}},
  "scenario": {"g_r_mhz": {"from": 2, "to": 14, "step": 4}, "g_a_mhz": {"from": 2, "to": 30, "step": 7}}
})";

inline constexpr const char* kThreshold = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"kappa_per_us": 0.2, "levels": 45},
    "auxiliary": {"kappa_per_us": 138, "levels": 2},
    "ideal_alignment": true
  },
  "scenario": {
    "points": [
      {"name": "B", "g_r_mhz": 1, "g_a_mhz": 2},
      {"name": "C", "unspecified": true},
      {"name": "D", "unspecified": true},
      {"name": "E", "g_r_mhz": 5, "g_a_mhz": 8},
      {"name": "F", "g_r_mhz": 8, "g_a_mhz": 11},
      {"name": "G", "g_r_mhz": 8, "g_a_mhz": 15}
    ],
    "drive_mhz": {"from": 2, "to": 40, "step": 1},
    "snapshots": [
      {"point": "G", "drive_mhz": 19.5},
      {"point": "G", "drive_mhz": 21},
      {"point": "F", "drive_mhz": 23},
      {"point": "F", "drive_mhz": 26}
    ],
    "wigner": {"n": 121},
    "radial": {"n_radii": 300, "n_angles": 48},
    "gap_level": 0.01,
    "truncation_check": true
  }
})";
inline constexpr const char* kThresholdFast = R"({
  "system": {"reservoir": {"levels": 20}},
  "scenario": {"drive_mhz": {"from": 2, "to": 38, "step": 4}, "wigner": {"n": 61}}
})";

inline constexpr const char* kAppendixB = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 8, "kappa_per_us": 0.2, "levels": 45},
    "auxiliary": {"g_mhz": 11, "kappa_per_us": 138, "levels": 2},
    "ideal_alignment": true
  },
  "scenario": {
    "drive_mhz": {"from": 5, "to": 45, "step": 1},
    "variants": ["standard", "unity_lowering"],
    "truncation_check": true
  }
})";
inline constexpr const char* kAppendixBFast = R"({
  "system": {"reservoir": {"levels": 20}},
  "scenario": {"drive_mhz": {"from": 5, "to": 45, "step": 5}}
})";

inline constexpr const char* kAppendixC = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 2},
    "reservoir": {"g_mhz": 8, "kappa_per_us": 0.2, "levels": 40},
    "auxiliary": {"g_mhz": 0, "kappa_per_us": 0, "levels": 1},
    "ideal_alignment": true
  },
  "scenario": {
    // drive frequency minus f_ge
    "detuning_mhz": [-100, -50, -30, -20, -15, -10, -5, -2, 0, 2, 5, 10, 15, 20, 30, 50, 100],
    "drive_mhz": [20, 40, 80],
    "monotone_window_mhz": 20,
    "truncation_check": true
  }
})";
inline constexpr const char* kAppendixCFast = R"({"system": {"reservoir": {"levels": 20}}})";

inline constexpr const char* kWigner = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 8, "kappa_per_us": 0.2, "levels": 45},
    "auxiliary": {"g_mhz": 15, "kappa_per_us": 138, "levels": 2},
    "drive": {"amplitude_mhz": 21},
    "ideal_alignment": true
  },
  "scenario": {
    "grid": {"x_min": -8, "x_max": 8, "p_min": -8, "p_max": 8, "n": 161, "auto_expand": true},
    "radial": {"n_radii": 300, "n_angles": 48}
  }
})";
inline constexpr const char* kWignerFast = R"({
  "system": {"reservoir": {"levels": 20}},
  "scenario": {"grid": {"n": 81}}
})";

inline constexpr const char* kOptimize = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 6.5, "kappa_per_us": 0.31, "levels": 60},
    "auxiliary": {"g_mhz": 23.5, "kappa_per_us": 138, "levels": 2},
    "drive": {"amplitude_mhz": 25},
    "ideal_alignment": true
  },
  "scenario": {
    // g_r, g_a in MHz; kappa_r, kappa_a in 1/us; omega_d as offset from f_gf/2 in MHz
    "free": [
      {"param": "g_r", "lower": 1, "upper": 20},
      {"param": "g_a", "lower": 2, "upper": 45},
      {"param": "kappa_r", "lower": 0.05, "upper": 2.0},
      {"param": "kappa_a", "lower": 20, "upper": 400},
      {"param": "omega_d", "lower": -10, "upper": 10}
    ],
    // empty: start from the system values
    "starts": [],
    "nelder_mead": {"rel_tolerance": 1e-4, "max_iterations": 500},
    "saturation_fraction": 0.8
  }
})";
inline constexpr const char* kOptimizeFast = R"({"system": {"reservoir": {"levels": 25}}})";

inline constexpr const char* kAnalytic = R"({
  "system": {
    "transmon": {"f_ge_mhz": 6000, "anharmonicity_mhz": -200, "gamma_per_us": 0.1, "levels": 4},
    "reservoir": {"g_mhz": 6.5, "kappa_per_us": 0.31, "levels": 60},
    "auxiliary": {"g_mhz": 23.5, "kappa_per_us": 138, "levels": 2},
    "drive": {"amplitude_mhz": 25},
    "ideal_alignment": true
  },
  "scenario": {
    "n_max": 20,
    "kappa_a_per_us": {"from": 1, "to": 800, "step": 1},
    "decay_t_end_us": 0.1,
    "decay_samples": 201,
    "sideband": {"g_r_mhz": 15, "g_a_mhz": 15}
  }
})";

}  // namespace maser::tools::presets
