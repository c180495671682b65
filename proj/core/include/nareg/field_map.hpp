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

#include <span>
#include <vector>

// Magnetic field geometry of the addressing setup and the map from atom
// position to hyperfine transition-frequency shift.
//
// The field is B(r) = (B0, 0, 0) - B' (x, y, -2z): a homogeneous offset along
// the trap axis x plus a quadrupole gradient. Internal units are gauss,
// micrometer and kilohertz; conversions from the config file's gauss/cm and
// MHz/G happen at load time.

namespace nareg {

using AtomLabel = int;

struct FieldConfig {
    double b0_gauss = 4.0;
    double b_grad_gauss_per_um = 15.0e-4;
    /// Signed linear Zeeman coefficient of the |0> <-> |1> transition.
    double zeeman_khz_per_gauss = -2450.0;
    /// Displacement of the trap axis from the field's symmetry axis.
    double axis_offset_y_um = 0.0;
    double axis_offset_z_um = 15.0;

    /// B0 = 4 G, B' = 15 G/cm, -2.45 MHz/G (nu0 = -9.8 MHz), 15 um off the
    /// z = 0 symmetry plane.
    static FieldConfig paper_defaults() { return {}; }

    /// Throws ConfigError unless b0 > 0, b' >= 0 and all values are finite.
    void validate() const;

    friend bool operator==(const FieldConfig &, const FieldConfig &) = default;
};

constexpr double kGaussPerCmToGaussPerUm = 1.0e-4;

/// nu0: transition shift produced by the offset field alone, MHz.
double offset_shift_mhz(const FieldConfig &cfg);

/// nu': axial frequency slope, kHz/um. Negative for the default config.
double axial_slope_khz_per_um(const FieldConfig &cfg);

double axial_detuning_khz(const FieldConfig &cfg, double x_um);

/// B'^2 / (2 B0), the curvature of |B| across the trap axis.
double radial_curvature_gauss_per_um2(const FieldConfig &cfg);

/// Second-order modulus B0 + (B'^2 / 2B0)(4z^2 + y^2), with y, z measured from
/// the field's symmetry axis.
double radial_field_modulus_gauss(const FieldConfig &cfg, double y_um, double z_um);

/// Transition shift of an atom at (0, y, z) relative to one at (0, 0, 0), Hz.
double radial_detuning_hz(const FieldConfig &cfg, double y_um, double z_um);

/// |B(x, y, z)| straight from the vector field, no expansion.
double exact_field_modulus_gauss(const FieldConfig &cfg, double x_um, double y_um, double z_um);

struct AtomGeometry {
    double axial_position_um = 0.0;
    /// 1-based, ordered by axial position.
    AtomLabel label = 1;

    friend bool operator==(const AtomGeometry &, const AtomGeometry &) = default;
};

/// Sorts positions and assigns labels 1..N. Throws ConfigError on coincident or
/// non-finite positions.
std::vector<AtomGeometry> make_geometry(std::span<const double> positions_um);

/// Throws ConfigError unless labels are 1..N and strictly ordered by position.
void validate_geometry(std::span<const AtomGeometry> atoms);

}  // namespace nareg
