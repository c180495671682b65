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

#include "nareg/dephasing.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nareg/errors.hpp"
#include "nareg/parallel.hpp"

namespace nareg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angular_freq_per_us(const ThermalConfig &cfg) { return kTwoPi * cfg.radial_freq_khz * 1.0e-3; }

void validate_times(std::span<const double> times) {
    for (double t : times) {
        if (!std::isfinite(t) || !(t > 0)) throw ConfigError("echo: echo times must be > 0");
    }
}

void validate_options(const EchoOptions &options) {
    if (!(options.steps_per_period >= 100.0)) throw ConfigError("echo: need at least 100 quadrature steps per period");
    if (options.refinement < 1) throw ConfigError("echo: refinement must be >= 1");
}

EchoPoint reduce(double echo_time, std::span<const Complex> phasors) {
    const double n = static_cast<double>(phasors.size());
    Complex sum{0.0, 0.0};
    for (const Complex &z : phasors) sum += z;
    const Complex mean = sum / n;
    const double contrast = std::abs(mean);
    double stderr_estimate = 0.0;
    if (phasors.size() > 1) {
        // Spread of the phasors projected on the mean direction.
        const Complex dir = contrast > 0 ? mean / contrast : Complex{1.0, 0.0};
        double ss = 0.0;
        for (const Complex &z : phasors) {
            const double s = (z * std::conj(dir)).real() - contrast;
            ss += s * s;
        }
        stderr_estimate = std::sqrt(ss / (n - 1.0) / n);
    }
    return {echo_time, contrast, stderr_estimate};
}

// Fills phasors[trial * times.size() + k] via `per_trial(sample, k)` and
// reduces each echo time in trial order, so the result is independent of the
// worker count.
template <typename PerTrial>
std::vector<EchoPoint> run_trials(const ThermalConfig &cfg, std::span<const double> times, unsigned workers,
                                  PerTrial &&per_trial) {
    const std::size_t n_times = times.size();
    const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
    std::vector<Complex> phasors(n_trials * n_times);
    parallel_for(n_trials, workers, [&](std::size_t trial) {
        const EchoTrialSample sample = sample_trial(cfg, trial);
        for (std::size_t k = 0; k < n_times; ++k) phasors[trial * n_times + k] = per_trial(sample, k);
    });

    std::vector<EchoPoint> out;
    out.reserve(n_times);
    std::vector<Complex> column(n_trials);
    for (std::size_t k = 0; k < n_times; ++k) {
        for (std::size_t trial = 0; trial < n_trials; ++trial) column[trial] = phasors[trial * n_times + k];
        out.push_back(reduce(times[k], column));
    }
    return out;
}

}  // namespace

void ThermalConfig::validate() const {
    if (!std::isfinite(temperature_uk) || !(temperature_uk > 0)) throw ConfigError("thermal: temperature must be > 0");
    if (!std::isfinite(radial_freq_khz) || !(radial_freq_khz > 0)) {
        throw ConfigError("thermal: radial frequency must be > 0");
    }
    if (!std::isfinite(atom_mass_kg) || !(atom_mass_kg > 0)) throw ConfigError("thermal: atom mass must be > 0");
    if (trials < 1) throw ConfigError("thermal: need at least one trial");
}

double velocity_std_um_per_us(const ThermalConfig &cfg) {
    return std::sqrt(kBoltzmann * cfg.temperature_uk * 1.0e-6 / cfg.atom_mass_kg);
}

double position_std_um(const ThermalConfig &cfg) { return velocity_std_um_per_us(cfg) / angular_freq_per_us(cfg); }

EchoTrialSample sample_trial(const ThermalConfig &cfg, std::uint64_t trial_index) {
    std::mt19937_64 rng(derive_seed(cfg.seed, trial_index));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sx = position_std_um(cfg);
    const double sv = velocity_std_um_per_us(cfg);
    EchoTrialSample s;
    s.y0_um = sx * gauss(rng);
    s.z0_um = sx * gauss(rng);
    s.vy0_um_per_us = sv * gauss(rng);
    s.vz0_um_per_us = sv * gauss(rng);
    return s;
}

double trial_detuning_hz(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field,
                         double t_us) {
    const double w = angular_freq_per_us(cfg);
    const double c = std::cos(w * t_us);
    const double s = std::sin(w * t_us);
    const double y = sample.y0_um * c + sample.vy0_um_per_us / w * s;
    const double z = sample.z0_um * c + sample.vz0_um_per_us / w * s;
    // radial_detuning(y + oy, z + oz) - radial_detuning(oy, oz), expanded so a
    // frozen atom gives exactly zero.
    const double oy = field.axis_offset_y_um;
    const double oz = field.axis_offset_z_um;
    const double quad = y * (y + 2.0 * oy) + 4.0 * z * (z + 2.0 * oz);
    return field.zeeman_khz_per_gauss * 1.0e3 * radial_curvature_gauss_per_um2(field) * quad;
}

double trial_detuning_bound_hz(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field) {
    const double w = angular_freq_per_us(cfg);
    const double ay = std::hypot(sample.y0_um, sample.vy0_um_per_us / w);
    const double az = std::hypot(sample.z0_um, sample.vz0_um_per_us / w);
    const double oy = std::abs(field.axis_offset_y_um);
    const double oz = std::abs(field.axis_offset_z_um);
    const double quad = ay * (ay + 2.0 * oy) + 4.0 * az * (az + 2.0 * oz);
    return std::abs(field.zeeman_khz_per_gauss * 1.0e3 * radial_curvature_gauss_per_um2(field)) * quad;
}

double trial_phase_rad(const EchoTrialSample &sample, const ThermalConfig &cfg, const FieldConfig &field, double t0_us,
                       double t1_us, double steps_per_period, int refinement) {
    if (t1_us <= t0_us) return 0.0;
    const double period_us = 1.0e3 / cfg.radial_freq_khz;
    const double max_step = period_us / steps_per_period;
    const auto pairs = static_cast<std::size_t>(std::ceil((t1_us - t0_us) / (2.0 * max_step)));
    const std::size_t n = 2 * std::max<std::size_t>(1, pairs) * static_cast<std::size_t>(refinement);
    const double h = (t1_us - t0_us) / static_cast<double>(n);

    double sum = trial_detuning_hz(sample, cfg, field, t0_us) + trial_detuning_hz(sample, cfg, field, t1_us);
    for (std::size_t i = 1; i < n; ++i) {
        const double weight = (i % 2 == 1) ? 4.0 : 2.0;
        sum += weight * trial_detuning_hz(sample, cfg, field, t0_us + static_cast<double>(i) * h);
    }
    const double integral_hz_us = sum * h / 3.0;
    return kTwoPi * 1.0e-6 * integral_hz_us;
}

std::vector<EchoPoint> echo_contrast(const ThermalConfig &cfg, const FieldConfig &field,
                                     std::span<const double> echo_times_us, const EchoOptions &options) {
    cfg.validate();
    field.validate();
    validate_times(echo_times_us);
    validate_options(options);
    return run_trials(cfg, echo_times_us, options.workers, [&](const EchoTrialSample &sample, std::size_t k) {
        const double te = echo_times_us[k];
        const double phi1 =
            trial_phase_rad(sample, cfg, field, 0.0, 0.5 * te, options.steps_per_period, options.refinement);
        const double phi2 =
            trial_phase_rad(sample, cfg, field, 0.5 * te, te, options.steps_per_period, options.refinement);
        return std::polar(1.0, phi2 - phi1);
    });
}

std::vector<EchoPoint> ramsey_contrast(const ThermalConfig &cfg, const FieldConfig &field,
                                       std::span<const double> times_us, const EchoOptions &options) {
    cfg.validate();
    field.validate();
    validate_times(times_us);
    validate_options(options);
    return run_trials(cfg, times_us, options.workers, [&](const EchoTrialSample &sample, std::size_t k) {
        const double t = times_us[k];
        const double phi1 =
            trial_phase_rad(sample, cfg, field, 0.0, 0.5 * t, options.steps_per_period, options.refinement);
        const double phi2 =
            trial_phase_rad(sample, cfg, field, 0.5 * t, t, options.steps_per_period, options.refinement);
        return std::polar(1.0, phi2 + phi1);
    });
}

std::vector<EchoPoint> echo_contrast_pulsed(const ThermalConfig &cfg, const FieldConfig &field,
                                            std::span<const double> echo_times_us, const PulseShape &pulse,
                                            const EchoOptions &options) {
    cfg.validate();
    field.validate();
    validate_times(echo_times_us);
    validate_options(options);
    pulse.validate();

    const PulseShape half_pi =
        calibrate_area(pulse.kind, pulse.duration_us, 0.5 * std::numbers::pi, pulse.truncation);
    const PulseShape full_pi = calibrate_area(pulse.kind, pulse.duration_us, std::numbers::pi, pulse.truncation);
    const double window = pulse.window_us();
    for (double te : echo_times_us) {
        if (window > 0.5 * te) {
            throw ConfigError("echo: pulse window " + std::to_string(window) + " us exceeds half the echo time " +
                              std::to_string(te) + " us");
        }
    }

    return run_trials(cfg, echo_times_us, options.workers, [&](const EchoTrialSample &sample, std::size_t k) {
        const double te = echo_times_us[k];
        const std::array<double, 3> starts{0.0, 0.5 * te, te};
        const std::array<const PulseShape *, 3> shapes{&half_pi, &full_pi, &half_pi};
        const double bound_khz = 1.0e-3 * trial_detuning_bound_hz(sample, cfg, field);

        std::array<TwoLevelUnitary, 3> u;
        for (int p = 0; p < 3; ++p) {
            const double start = starts[p];
            const double accumulated =
                trial_phase_rad(sample, cfg, field, 0.0, start, options.steps_per_period, options.refinement);
            const Detuning detuning = Detuning::profile(
                [&, start](double t) { return 1.0e-3 * trial_detuning_hz(sample, cfg, field, start + t); }, bound_khz);
            u[p] = propagate_segment(*shapes[p], detuning, -accumulated, 0.0, window, options.integrator);
        }

        const TwoLevelState before_last = u[1].apply(u[0].apply(TwoLevelState::ground()));
        // Shifting the drive phase by phi conjugates the propagator with
        // diag(e^{i phi/2}, e^{-i phi/2}).
        auto population1 = [&](double phi) {
            const Complex d = std::polar(1.0, 0.5 * phi);
            const Complex dc = std::conj(d);
            const TwoLevelUnitary shifted{u[2].u00, d * u[2].u01 * d, dc * u[2].u10 * dc, u[2].u11};
            return shifted.apply(before_last).population1();
        };
        const double p0 = population1(0.0);
        const double p90 = population1(0.5 * std::numbers::pi);
        const double p180 = population1(std::numbers::pi);
        const double p270 = population1(1.5 * std::numbers::pi);
        return Complex{p0 - p180, p90 - p270};
    });
}

}  // namespace nareg
