// Copyright 2026 The nareg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nareg/dephasing.hpp"
#include "nareg/field_map.hpp"
#include "nareg/pulse_program.hpp"
#include "nareg/register.hpp"

// Run configuration file (JSON). Every key is optional; anything omitted keeps
// its default, and the defaults are the reference parameter set. Unknown keys
// are rejected.
//
//   {
//     "field": {
//       "b0_gauss": 4.0,
//       "b_grad_gauss_per_cm": 15.0,
//       "zeeman_coeff_mhz_per_gauss": -2.45,
//       "axis_offset_y_um": 0.0,
//       "axis_offset_z_um": 15.0
//     },
//     "atoms_um": [-40, -20, 0, 20, 40],
//     "thermal": {"temperature_uk": 80, "radial_freq_khz": 1.6,
//                 "trials": 100000, "seed": 1, "atom_mass_kg": 2.20695e-25},
//     "detection": {"eps_0_as_1": 0.01, "eps_1_as_0": 0.01, "pump_fidelity": 1.0},
//     "rabi_khz": 32,
//     "shapes": {"g70": {"kind": "gaussian", "sigma_us": 35.35, "truncation": 4},
//                "sq":  {"kind": "square", "length_us": 15.625}},
//     "default_shape": "g70",
//     "dead_time_us": 1.0,
//     "seed": 1,
//     "workers": 0
//   }

namespace nareg {

struct RunConfig {
    FieldConfig field = FieldConfig::paper_defaults();
    std::vector<double> atom_positions_um{-40.0, -20.0, 0.0, 20.0, 40.0};
    ThermalConfig thermal = ThermalConfig::paper_defaults();
    DetectionModel detection = DetectionModel::paper_defaults();
    double pump_fidelity = 1.0;
    /// Square-pulse Rabi frequency for Rabi curves, Omega_R / 2pi.
    double rabi_khz = 32.0;
    std::vector<ShapeDef> shapes = default_shapes();
    std::string default_shape = "g70";
    double dead_time_us = 1.0;
    /// Register-shot seed; thermal.seed drives the Monte-Carlo trials.
    std::uint64_t seed = 1;
    unsigned workers = 0;

    /// Gaussian pi-pulses with 2 sigma = 17.7, 35.4 and 70.7 us (g17, g35, g70)
    /// and the 15.625 us square pi-pulse at 32 kHz (sq).
    static std::vector<ShapeDef> default_shapes();
    static RunConfig paper_defaults() { return {}; }

    const ShapeDef &shape(std::string_view name) const;

    /// Validates every sub-config; throws ConfigError.
    void validate() const;

    /// Flat (key, value) list echoed into output headers.
    std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Overlays the JSON document on `base`. Throws ConfigError with the offending
/// key for malformed JSON, wrong types or unknown keys.
RunConfig parse_run_config(std::string_view json_text, RunConfig base = RunConfig::paper_defaults());

RunConfig load_run_config(const std::filesystem::path &path, RunConfig base = RunConfig::paper_defaults());

}  // namespace nareg
