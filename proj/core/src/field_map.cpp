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

#include "nareg/field_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nareg/errors.hpp"

namespace nareg {

void FieldConfig::validate() const {
    const bool finite = std::isfinite(b0_gauss) && std::isfinite(b_grad_gauss_per_um) &&
                        std::isfinite(zeeman_khz_per_gauss) && std::isfinite(axis_offset_y_um) &&
                        std::isfinite(axis_offset_z_um);
    if (!finite) throw ConfigError("field: all parameters must be finite");
    if (!(b0_gauss > 0)) throw ConfigError("field: b0 must be positive, got " + std::to_string(b0_gauss));
    if (b_grad_gauss_per_um < 0) throw ConfigError("field: gradient must be non-negative");
}

double offset_shift_mhz(const FieldConfig &cfg) { return cfg.zeeman_khz_per_gauss * cfg.b0_gauss * 1.0e-3; }

// Sign follows the calibrated slope nu' < 0 for a negative Zeeman coefficient;
// the axial coordinate runs against the x of the quadrupole formula.
double axial_slope_khz_per_um(const FieldConfig &cfg) { return cfg.zeeman_khz_per_gauss * cfg.b_grad_gauss_per_um; }

double axial_detuning_khz(const FieldConfig &cfg, double x_um) { return axial_slope_khz_per_um(cfg) * x_um; }

double radial_curvature_gauss_per_um2(const FieldConfig &cfg) {
    return cfg.b_grad_gauss_per_um * cfg.b_grad_gauss_per_um / (2.0 * cfg.b0_gauss);
}

double radial_field_modulus_gauss(const FieldConfig &cfg, double y_um, double z_um) {
    return cfg.b0_gauss + radial_curvature_gauss_per_um2(cfg) * (4.0 * z_um * z_um + y_um * y_um);
}

double radial_detuning_hz(const FieldConfig &cfg, double y_um, double z_um) {
    // Computed from the quadratic form directly rather than modulus - b0 to
    // avoid cancellation at small displacements.
    const double excess_gauss = radial_curvature_gauss_per_um2(cfg) * (4.0 * z_um * z_um + y_um * y_um);
    return cfg.zeeman_khz_per_gauss * 1.0e3 * excess_gauss;
}

double exact_field_modulus_gauss(const FieldConfig &cfg, double x_um, double y_um, double z_um) {
    const double g = cfg.b_grad_gauss_per_um;
    const double bx = cfg.b0_gauss - g * x_um;
    const double by = -g * y_um;
    const double bz = 2.0 * g * z_um;
    return std::sqrt(bx * bx + by * by + bz * bz);
}

std::vector<AtomGeometry> make_geometry(std::span<const double> positions_um) {
    std::vector<double> sorted(positions_um.begin(), positions_um.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<AtomGeometry> atoms;
    atoms.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        atoms.push_back({sorted[i], static_cast<AtomLabel>(i + 1)});
    }
    validate_geometry(atoms);
    return atoms;
}

void validate_geometry(std::span<const AtomGeometry> atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!std::isfinite(atoms[i].axial_position_um)) {
            throw ConfigError("geometry: atom position must be finite");
        }
        if (atoms[i].label != static_cast<AtomLabel>(i + 1)) {
            throw ConfigError("geometry: labels must run 1..N in order, found " + std::to_string(atoms[i].label) +
                              " at index " + std::to_string(i));
        }
        if (i > 0 && !(atoms[i].axial_position_um > atoms[i - 1].axial_position_um)) {
            throw ConfigError("geometry: atoms " + std::to_string(i) + " and " + std::to_string(i + 1) +
                              " are not strictly ordered by position");
        }
    }
}

}  // namespace nareg
