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
#include <span>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/field_map.hpp"

// Spin-echo contrast decay caused by thermal radial oscillation of trapped
// atoms through the quadratic radial profile of |B|.
//
// Each Monte-Carlo trial draws an initial radial position and velocity from the
// thermal distribution of a harmonic trap, follows the free oscillation, and
// integrates the resulting time-dependent transition shift.

namespace nareg {

constexpr double kBoltzmann = 1.380649e-23;  // J/K
constexpr double kCesiumMassKg = 2.20695e-25;

struct ThermalConfig {
    double temperature_uk = 80.0;
    /// Radial trap frequency (linear), shared by y and z.
    double radial_freq_khz = 1.6;
    double atom_mass_kg = kCesiumMassKg;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;

    static ThermalConfig paper_defaults() { return {}; }

    /// temperature > 0, radial_freq > 0, mass > 0, trials >= 1.
    void validate() const;
};

/// sqrt(kB T / m omega^2)
double position_std_um(const ThermalConfig &cfg);
/// sqrt(kB T / m); 1 m/s is 1 um/us.
double velocity_std_um_per_us(const ThermalConfig &cfg);

struct EchoTrialSample {
    double y0_um = 0.0;
    double z0_um = 0.0;
    double vy0_um_per_us = 0.0;
    double vz0_um_per_us = 0.0;
};

/// Thermal draw for one trial; depends only on (cfg.seed, trial_index).
EchoTrialSample sample_trial(const ThermalConfig &cfg, std::uint64_t trial_index);

/// Shift of the atom's transition at time t relative to an atom frozen on the
/// (offset) trap axis, Hz.
double trial_detuning_hz(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field,
                         double t_us);

/// Bound on |trial_detuning_hz| over all t.
double trial_detuning_bound_hz(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field);

/// 2 pi times the integral of the trial detuning over [t0, t1], composite
/// Simpson with at least `steps_per_period` intervals per radial period.
double trial_phase_rad(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field, double t0_us,
                       double t1_us, double steps_per_period, int refinement = 1);

struct EchoOptions {
    /// Quadrature intervals per radial period; at least 100.
    double steps_per_period = 200.0;
    /// Multiplies the interval count (2 halves the quadrature step).
    int refinement = 1;
    /// 0 = hardware concurrency. Results do not depend on this.
    unsigned workers = 0;
    /// Integrator settings for the finite-pulse variant.
    IntegratorOptions integrator{};
};

struct EchoPoint {
    double echo_time_us = 0.0;
    double contrast = 0.0;
    double stderr_estimate = 0.0;
};

/// Ideal instantaneous pi/2 - pi - pi/2 echo. Contrast |<exp(i(phi2 - phi1))>|
/// with phi1, phi2 the phases collected in the two halves of the echo time.
std::vector<EchoPoint> echo_contrast(const ThermalConfig &cfg, const FieldConfig &field,
                                     std::span<const double> echo_times_us, const EchoOptions &options = {});

/// Ramsey (no refocusing pulse) contrast |<exp(i(phi1 + phi2))>| on the same
/// trials.
std::vector<EchoPoint> ramsey_contrast(const ThermalConfig &cfg, const FieldConfig &field,
                                       std::span<const double> times_us, const EchoOptions &options = {});

/// Echo with finite pulses. `pulse` fixes the kind, duration and truncation;
/// pi/2 and pi versions are area-calibrated from it. Pulse centers sit at
/// tau/2, tau/2 + t_e/2 and tau/2 + t_e, tau being the pulse window, and the
/// trial's instantaneous detuning acts during each pulse. The contrast is the
/// peak-to-peak fringe amplitude when scanning the phase of the last pulse.
/// Throws ConfigError if the pulse window exceeds t_e/2.
std::vector<EchoPoint> echo_contrast_pulsed(const ThermalConfig &cfg, const FieldConfig &field,
                                            std::span<const double> echo_times_us, const PulseShape &pulse,
                                            const EchoOptions &options = {});

}  // namespace nareg
