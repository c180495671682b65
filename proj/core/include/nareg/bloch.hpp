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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "nareg/field_map.hpp"

// Rotating-wave two-level dynamics under shaped microwave pulses.
//
// Everything is expressed in the atom's own rotating frame: with no drive the
// propagator is the identity, and an atom whose resonance sits `delta` above
// the carrier sees the drive phase advance as theta(t) = phi - 2 pi int delta.
// The Hamiltonian is
//
//     H(t) = Omega(t)/2 * [[0, e^{i theta}], [e^{-i theta}, 0]]
//
// so a resonant square pulse gives cos(Omega t/2)|0> - i sin(Omega t/2)|1>.
// Frequencies are linear (kHz), times are microseconds.

namespace nareg {

using Complex = std::complex<double>;

enum class PulseKind { square, gaussian };

const char *to_string(PulseKind kind);
PulseKind pulse_kind_from_string(std::string_view name);

struct PulseShape {
    PulseKind kind = PulseKind::square;
    /// Peak Rabi frequency Omega0 / 2pi.
    double peak_rabi_khz = 0.0;
    /// Square: full length. Gaussian: sigma_tau.
    double duration_us = 1.0;
    /// Gaussian only: the envelope is kept on [-truncation, +truncation] sigma.
    double truncation = 4.0;

    static PulseShape square(double length_us, double peak_rabi_khz) {
        return {PulseKind::square, peak_rabi_khz, length_us, 4.0};
    }
    static PulseShape gaussian(double sigma_us, double peak_rabi_khz, double truncation = 4.0) {
        return {PulseKind::gaussian, peak_rabi_khz, sigma_us, truncation};
    }

    /// Total time the source is on.
    double window_us() const;
    /// Normalized envelope at pulse-local time t in [0, window].
    double envelope(double t_us) const;
    /// Integral of the normalized envelope over the window, us.
    double envelope_integral_us() const;
    /// Resonant rotation angle, integral of Omega(t) dt.
    double area_rad() const;

    /// Throws ConfigError unless peak_rabi >= 0, duration > 0, and truncation
    /// >= 3 for gaussians.
    void validate() const;

    friend bool operator==(const PulseShape &, const PulseShape &) = default;
};

struct TwoLevelState {
    Complex amp0{1.0, 0.0};
    Complex amp1{0.0, 0.0};

    static TwoLevelState ground() { return {}; }
    static TwoLevelState excited() { return {{0.0, 0.0}, {1.0, 0.0}}; }

    double norm_squared() const { return std::norm(amp0) + std::norm(amp1); }
    double population1() const { return std::norm(amp1); }
};

struct TwoLevelUnitary {
    Complex u00{1.0, 0.0};
    Complex u01{0.0, 0.0};
    Complex u10{0.0, 0.0};
    Complex u11{1.0, 0.0};

    static TwoLevelUnitary identity() { return {}; }

    /// |<1|U|0>|^2, the population moved out of |0>.
    double transfer() const { return std::norm(u10); }
    TwoLevelUnitary adjoint() const;
    TwoLevelState apply(const TwoLevelState &s) const;
    /// Largest entry of |U^dagger U - 1|.
    double unitarity_deviation() const;

    friend TwoLevelUnitary operator*(const TwoLevelUnitary &a, const TwoLevelUnitary &b);
};

/// Atom-minus-carrier detuning, either constant or an arbitrary function of
/// pulse-local time with a declared bound on |delta| (used for step selection).
class Detuning {
   public:
    using Profile = std::function<double(double t_us)>;

    static Detuning constant(double khz) { return Detuning(khz); }
    static Detuning profile(Profile fn, double max_abs_khz) { return Detuning(std::move(fn), max_abs_khz); }

    double at(double t_us) const { return fn_ ? fn_(t_us) : constant_khz_; }
    double max_abs_khz() const { return max_abs_khz_; }
    bool is_constant() const { return !fn_; }

   private:
    explicit Detuning(double khz);
    Detuning(Profile fn, double max_abs_khz);

    double constant_khz_ = 0.0;
    double max_abs_khz_ = 0.0;
    Profile fn_;
};

struct IntegratorOptions {
    /// RK4 steps per period of the fastest frequency in play (peak Rabi or
    /// |delta|max). Must be at least 50.
    double steps_per_cycle = 500.0;
    /// Multiplies the chosen step count; 2 halves every step (convergence checks).
    int refinement = 1;
    std::size_t max_steps = 50'000'000;
    /// A propagator further than this from unitary raises ConvergenceError.
    double unitarity_tolerance = 1.0e-6;
};

/// Propagator of the whole pulse window, drive phase `phase_rad` at t = 0.
TwoLevelUnitary propagate(const PulseShape &shape, const Detuning &detuning, double phase_rad = 0.0,
                          const IntegratorOptions &options = {});

/// Propagator over [t_begin, t_end] of the pulse window, with drive phase
/// `phase_at_begin` at t_begin. Piecewise evaluation composes to the full pulse.
TwoLevelUnitary propagate_segment(const PulseShape &shape, const Detuning &detuning, double phase_at_begin,
                                  double t_begin_us, double t_end_us, const IntegratorOptions &options = {});

/// Number of RK4 steps propagate_segment takes for this shape/detuning/span.
std::size_t integrator_steps(const PulseShape &shape, double max_abs_detuning_khz, double span_us,
                             const IntegratorOptions &options = {});

/// Shape of the given kind and duration whose resonant area equals `area_rad`.
/// Gaussian areas account for the truncated tails.
PulseShape calibrate_area(PulseKind kind, double duration_us, double area_rad, double truncation = 4.0);

inline PulseShape calibrate_pi_pulse(PulseKind kind, double duration_us, double truncation = 4.0) {
    return calibrate_area(kind, duration_us, 3.14159265358979323846, truncation);
}

/// Wraps into (-pi, pi].
double wrap_phase(double rad);

/// arg(u00) - arg(u11) wrapped into (-pi, pi]; NaN when either diagonal entry
/// is (numerically) zero.
double relative_phase(const TwoLevelUnitary &u);

/// Relative |0>/|1> phase kick on an atom detuned by `detuning_khz` from the
/// pulse. Throws DomainError for a resonant atom.
double spectator_phase(const PulseShape &shape, double detuning_khz, const IntegratorOptions &options = {});

struct SpectrumPoint {
    double offset_um = 0.0;
    double transfer = 0.0;
    /// relative_phase of the propagator; NaN near full transfer.
    double phase_rad = 0.0;
};

/// Population transfer from |0> for an atom displaced by each offset from the
/// position the carrier is tuned to (delta = nu' * offset).
std::vector<SpectrumPoint> transfer_spectrum(const PulseShape &shape, std::span<const double> offsets_um,
                                             const FieldConfig &cfg, unsigned workers = 1,
                                             const IntegratorOptions &options = {});

struct RabiPoint {
    double time_us = 0.0;
    double transfer = 0.0;
    double phase_rad = 0.0;
};

/// Square pulses of each length at fixed Rabi frequency and detuning.
std::vector<RabiPoint> rabi_curve(double rabi_khz, std::span<const double> times_us, double detuning_khz = 0.0,
                                  unsigned workers = 1, const IntegratorOptions &options = {});

}  // namespace nareg
