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

#include "nareg/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nareg/errors.hpp"
#include "nareg/parallel.hpp"

namespace nareg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// kHz * us -> cycles
constexpr double kKiloMicro = 1.0e-3;
// Gaussian envelopes need this many steps per sigma even with no drive.
constexpr double kStepsPerSigma = 20.0;

struct Rk4State {
    TwoLevelUnitary u;
    double theta = 0.0;
};

struct Rk4Derivative {
    Complex d00, d01, d10, d11;
    double dtheta;
};

class PulseIntegrator {
   public:
    PulseIntegrator(const PulseShape &shape, const Detuning &detuning)
        : shape_(shape), detuning_(detuning), omega_scale_(kTwoPi * kKiloMicro * shape.peak_rabi_khz) {}

    Rk4Derivative derivative(double t, const Rk4State &s) const {
        const double half_omega = 0.5 * omega_scale_ * shape_.envelope(t);
        const Complex c = std::polar(half_omega, s.theta);
        const Complex cc = std::conj(c);
        const Complex minus_i(0.0, -1.0);
        return {minus_i * c * s.u.u10, minus_i * c * s.u.u11, minus_i * cc * s.u.u00, minus_i * cc * s.u.u01,
                -kTwoPi * kKiloMicro * detuning_.at(t)};
    }

    static Rk4State advance(const Rk4State &s, const Rk4Derivative &k, double h) {
        Rk4State out;
        out.u.u00 = s.u.u00 + h * k.d00;
        out.u.u01 = s.u.u01 + h * k.d01;
        out.u.u10 = s.u.u10 + h * k.d10;
        out.u.u11 = s.u.u11 + h * k.d11;
        out.theta = s.theta + h * k.dtheta;
        return out;
    }

    void step(double t, double h, Rk4State &s) const {
        const Rk4Derivative k1 = derivative(t, s);
        const Rk4Derivative k2 = derivative(t + 0.5 * h, advance(s, k1, 0.5 * h));
        const Rk4Derivative k3 = derivative(t + 0.5 * h, advance(s, k2, 0.5 * h));
        const Rk4Derivative k4 = derivative(t + h, advance(s, k3, h));
        const double w = h / 6.0;
        s.u.u00 += w * (k1.d00 + 2.0 * k2.d00 + 2.0 * k3.d00 + k4.d00);
        s.u.u01 += w * (k1.d01 + 2.0 * k2.d01 + 2.0 * k3.d01 + k4.d01);
        s.u.u10 += w * (k1.d10 + 2.0 * k2.d10 + 2.0 * k3.d10 + k4.d10);
        s.u.u11 += w * (k1.d11 + 2.0 * k2.d11 + 2.0 * k3.d11 + k4.d11);
        s.theta += w * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
    }

   private:
    const PulseShape &shape_;
    const Detuning &detuning_;
    double omega_scale_;
};

void validate_options(const IntegratorOptions &options) {
    if (!(options.steps_per_cycle >= 50.0)) {
        throw ConfigError("integrator: steps_per_cycle must be at least 50");
    }
    if (options.refinement < 1) throw ConfigError("integrator: refinement must be >= 1");
}

}  // namespace

const char *to_string(PulseKind kind) {
    switch (kind) {
        case PulseKind::square:
            return "square";
        case PulseKind::gaussian:
            return "gaussian";
    }
    return "?";
}

PulseKind pulse_kind_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "square") return PulseKind::square;
    if (lower == "gaussian") return PulseKind::gaussian;
    throw ConfigError("unknown pulse kind '" + std::string(name) + "' (expected square or gaussian)");
}

double PulseShape::window_us() const {
    return kind == PulseKind::square ? duration_us : 2.0 * truncation * duration_us;
}

double PulseShape::envelope(double t_us) const {
    if (kind == PulseKind::square) return 1.0;
    const double x = (t_us - truncation * duration_us) / duration_us;
    return std::exp(-0.5 * x * x);
}

double PulseShape::envelope_integral_us() const {
    if (kind == PulseKind::square) return duration_us;
    return duration_us * std::sqrt(kTwoPi) * std::erf(truncation / std::numbers::sqrt2);
}

double PulseShape::area_rad() const { return kTwoPi * kKiloMicro * peak_rabi_khz * envelope_integral_us(); }

void PulseShape::validate() const {
    if (!std::isfinite(peak_rabi_khz) || peak_rabi_khz < 0) {
        throw ConfigError("pulse: peak Rabi frequency must be finite and >= 0");
    }
    if (!std::isfinite(duration_us) || !(duration_us > 0)) throw ConfigError("pulse: duration must be > 0");
    if (kind == PulseKind::gaussian && !(truncation >= 3.0)) {
        throw ConfigError("pulse: gaussian truncation must be at least 3 sigma");
    }
}

TwoLevelUnitary TwoLevelUnitary::adjoint() const {
    return {std::conj(u00), std::conj(u10), std::conj(u01), std::conj(u11)};
}

TwoLevelState TwoLevelUnitary::apply(const TwoLevelState &s) const {
    return {u00 * s.amp0 + u01 * s.amp1, u10 * s.amp0 + u11 * s.amp1};
}

TwoLevelUnitary operator*(const TwoLevelUnitary &a, const TwoLevelUnitary &b) {
    return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11, a.u10 * b.u00 + a.u11 * b.u10,
            a.u10 * b.u01 + a.u11 * b.u11};
}

double TwoLevelUnitary::unitarity_deviation() const {
    const TwoLevelUnitary p = adjoint() * *this;
    return std::max({std::abs(p.u00 - 1.0), std::abs(p.u01), std::abs(p.u10), std::abs(p.u11 - 1.0)});
}

Detuning::Detuning(double khz) : constant_khz_(khz), max_abs_khz_(std::abs(khz)) {}

Detuning::Detuning(Profile fn, double max_abs_khz) : max_abs_khz_(std::abs(max_abs_khz)), fn_(std::move(fn)) {}

std::size_t integrator_steps(const PulseShape &shape, double max_abs_detuning_khz, double span_us,
                             const IntegratorOptions &options) {
    validate_options(options);
    if (!std::isfinite(max_abs_detuning_khz)) throw ConfigError("integrator: detuning must be finite");
    if (span_us <= 0) return 0;

    const double fastest_khz = std::max(shape.peak_rabi_khz, std::abs(max_abs_detuning_khz));
    double max_step_us = std::numeric_limits<double>::infinity();
    if (fastest_khz > 0) max_step_us = 1.0 / (options.steps_per_cycle * fastest_khz * kKiloMicro);
    if (shape.kind == PulseKind::gaussian) max_step_us = std::min(max_step_us, shape.duration_us / kStepsPerSigma);

    const double base = std::isinf(max_step_us) ? 1.0 : std::ceil(span_us / max_step_us);
    const double steps = std::max(1.0, base) * options.refinement;
    if (!(steps <= static_cast<double>(options.max_steps))) {
        throw ConfigError("integrator: pulse needs " + std::to_string(steps) + " steps, more than the limit of " +
                          std::to_string(options.max_steps) + " (pulse too long for the step bound)");
    }
    return static_cast<std::size_t>(steps);
}

TwoLevelUnitary propagate_segment(const PulseShape &shape, const Detuning &detuning, double phase_at_begin,
                                  double t_begin_us, double t_end_us, const IntegratorOptions &options) {
    shape.validate();
    if (!(t_end_us >= t_begin_us)) throw ConfigError("propagate: segment end precedes its start");
    if (shape.peak_rabi_khz == 0.0 || t_end_us == t_begin_us) {
        validate_options(options);
        return TwoLevelUnitary::identity();
    }

    const std::size_t steps = integrator_steps(shape, detuning.max_abs_khz(), t_end_us - t_begin_us, options);
    const double h = (t_end_us - t_begin_us) / static_cast<double>(steps);
    const PulseIntegrator integrator(shape, detuning);
    Rk4State state{TwoLevelUnitary::identity(), phase_at_begin};
    for (std::size_t i = 0; i < steps; ++i) {
        integrator.step(t_begin_us + static_cast<double>(i) * h, h, state);
    }

    const double deviation = state.u.unitarity_deviation();
    if (!(deviation <= options.unitarity_tolerance)) {
        throw ConvergenceError("propagate: propagator drifted from unitarity by " + std::to_string(deviation));
    }
    return state.u;
}

TwoLevelUnitary propagate(const PulseShape &shape, const Detuning &detuning, double phase_rad,
                          const IntegratorOptions &options) {
    return propagate_segment(shape, detuning, phase_rad, 0.0, shape.window_us(), options);
}

PulseShape calibrate_area(PulseKind kind, double duration_us, double area_rad, double truncation) {
    if (!std::isfinite(duration_us) || !(duration_us > 0)) throw ConfigError("calibrate: duration must be > 0");
    if (!std::isfinite(area_rad)) throw ConfigError("calibrate: area must be finite");
    PulseShape shape{kind, 0.0, duration_us, truncation};
    shape.validate();
    // Negative rotation angles are a pi phase flip of the drive, handled by the
    // caller; the envelope amplitude itself is non-negative.
    shape.peak_rabi_khz = std::abs(area_rad) / (kTwoPi * kKiloMicro * shape.envelope_integral_us());
    return shape;
}

double wrap_phase(double rad) {
    double r = std::remainder(rad, kTwoPi);
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

double relative_phase(const TwoLevelUnitary &u) {
    constexpr double kFloor = 1.0e-6;
    if (std::abs(u.u00) < kFloor || std::abs(u.u11) < kFloor) return std::numeric_limits<double>::quiet_NaN();
    return wrap_phase(std::arg(u.u00) - std::arg(u.u11));
}

double spectator_phase(const PulseShape &shape, double detuning_khz, const IntegratorOptions &options) {
    if (detuning_khz == 0.0) {
        throw DomainError("spectator phase is undefined for a resonant atom (the pulse rotates it)");
    }
    const TwoLevelUnitary u = propagate(shape, Detuning::constant(detuning_khz), 0.0, options);
    return wrap_phase(std::arg(u.u00) - std::arg(u.u11));
}

std::vector<SpectrumPoint> transfer_spectrum(const PulseShape &shape, std::span<const double> offsets_um,
                                             const FieldConfig &cfg, unsigned workers,
                                             const IntegratorOptions &options) {
    cfg.validate();
    shape.validate();
    const double slope = axial_slope_khz_per_um(cfg);
    std::vector<SpectrumPoint> out(offsets_um.size());
    parallel_for(offsets_um.size(), workers, [&](std::size_t i) {
        const double dx = offsets_um[i];
        const TwoLevelUnitary u = propagate(shape, Detuning::constant(slope * dx), 0.0, options);
        out[i] = {dx, u.transfer(), relative_phase(u)};
    });
    return out;
}

std::vector<RabiPoint> rabi_curve(double rabi_khz, std::span<const double> times_us, double detuning_khz,
                                  unsigned workers, const IntegratorOptions &options) {
    if (!std::isfinite(rabi_khz) || rabi_khz < 0) throw ConfigError("rabi: Rabi frequency must be >= 0");
    for (double t : times_us) {
        if (!std::isfinite(t) || t < 0) throw ConfigError("rabi: pulse times must be >= 0");
    }
    std::vector<RabiPoint> out(times_us.size());
    parallel_for(times_us.size(), workers, [&](std::size_t i) {
        const double t = times_us[i];
        TwoLevelUnitary u = TwoLevelUnitary::identity();
        if (t > 0) u = propagate(PulseShape::square(t, rabi_khz), Detuning::constant(detuning_khz), 0.0, options);
        out[i] = {t, u.transfer(), relative_phase(u)};
    });
    return out;
}

}  // namespace nareg
