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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nareg/errors.hpp"
#include "nareg/field_map.hpp"

namespace nareg {
namespace {

constexpr double kPi = std::numbers::pi;

// Square pulse from |0>: (W0/W)^2 sin^2(W t / 2), W the generalized Rabi
// frequency, everything in kHz and us.
double analytic_transfer(double rabi_khz, double detuning_khz, double t_us) {
    const double w = std::hypot(rabi_khz, detuning_khz);
    if (w == 0.0) return 0.0;
    const double s = std::sin(kPi * 1e-3 * w * t_us);
    return (rabi_khz / w) * (rabi_khz / w) * s * s;
}

double max_entry_diff(const TwoLevelUnitary &a, const TwoLevelUnitary &b) {
    return std::max({std::abs(a.u00 - b.u00), std::abs(a.u01 - b.u01), std::abs(a.u10 - b.u10),
                     std::abs(a.u11 - b.u11)});
}

TEST(PulseShape, SquareEnvelope) {
    const PulseShape s = PulseShape::square(15.625, 32.0);
    EXPECT_DOUBLE_EQ(s.window_us(), 15.625);
    EXPECT_DOUBLE_EQ(s.envelope(3.0), 1.0);
    EXPECT_NEAR(s.area_rad(), kPi, 1e-12);
}

TEST(PulseShape, GaussianWindowIsCentered) {
    const PulseShape g = PulseShape::gaussian(10.0, 5.0, 4.0);
    EXPECT_DOUBLE_EQ(g.window_us(), 80.0);
    EXPECT_DOUBLE_EQ(g.envelope(40.0), 1.0);
    EXPECT_NEAR(g.envelope(30.0), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(g.envelope(30.0), g.envelope(50.0), 1e-15);
    // integral of exp(-t^2 / 2 s^2) over +-4 s
    EXPECT_NEAR(g.envelope_integral_us(), 10.0 * std::sqrt(2 * kPi) * std::erf(4.0 / std::sqrt(2.0)), 1e-12);
}

TEST(PulseShape, Validation) {
    EXPECT_THROW(PulseShape::square(0.0, 1.0).validate(), ConfigError);
    EXPECT_THROW(PulseShape::square(1.0, -1.0).validate(), ConfigError);
    EXPECT_THROW(PulseShape::gaussian(1.0, 1.0, 2.5).validate(), ConfigError);
    EXPECT_NO_THROW(PulseShape::gaussian(1.0, 1.0, 3.0).validate());
    EXPECT_THROW(pulse_kind_from_string("triangle"), ConfigError);
    EXPECT_EQ(pulse_kind_from_string("gaussian"), PulseKind::gaussian);
}

TEST(Calibrate, SquarePiAt32kHz) {
    const PulseShape pi = calibrate_pi_pulse(PulseKind::square, 15.625);
    EXPECT_NEAR(pi.peak_rabi_khz, 32.0, 1e-12);
}

TEST(Calibrate, GaussianAreaIncludesTruncation) {
    const double sigma = 35.35;
    const PulseShape pi = calibrate_pi_pulse(PulseKind::gaussian, sigma);
    const double integral = sigma * std::sqrt(2 * kPi) * std::erf(4.0 / std::sqrt(2.0));
    EXPECT_NEAR(pi.peak_rabi_khz, kPi / (2 * kPi * 1e-3 * integral), 1e-12);
    EXPECT_NEAR(pi.area_rad(), kPi, 1e-12);
}

TEST(Propagate, ResonantPiFlips) {
    for (PulseKind kind : {PulseKind::square, PulseKind::gaussian}) {
        const PulseShape pi = calibrate_pi_pulse(kind, kind == PulseKind::square ? 15.625 : 35.35);
        const TwoLevelUnitary u = propagate(pi, Detuning::constant(0.0));
        EXPECT_GT(u.transfer(), 1.0 - 1e-9);
    }
}

TEST(Propagate, ZeroAmplitudeIsIdentity) {
    const TwoLevelUnitary u = propagate(PulseShape::square(10.0, 0.0), Detuning::constant(5.0));
    EXPECT_EQ(max_entry_diff(u, TwoLevelUnitary::identity()), 0.0);
}

TEST(Propagate, HadamardPoint) {
    const TwoLevelUnitary u = propagate(PulseShape::square(7.81, 32.0), Detuning::constant(0.0));
    EXPECT_NEAR(u.transfer(), 0.5, 0.002);
}

TEST(Propagate, MatchesAnalyticRabiFormula) {
    std::mt19937_64 rng(20260417);
    std::uniform_real_distribution<double> rabi(0.5, 100.0);
    std::uniform_real_distribution<double> det(-100.0, 100.0);
    std::uniform_real_distribution<double> dur(0.05, 60.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double w = rabi(rng);
        const double d = det(rng);
        const double t = dur(rng);
        const TwoLevelUnitary u = propagate(PulseShape::square(t, w), Detuning::constant(d));
        worst = std::max(worst, std::abs(u.transfer() - analytic_transfer(w, d, t)));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Propagate, ResonantGaussianFollowsArea) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> area(0.0, 4 * kPi);
    std::uniform_real_distribution<double> sigma(1.0, 40.0);
    for (int i = 0; i < 50; ++i) {
        const double a = area(rng);
        const PulseShape g = calibrate_area(PulseKind::gaussian, sigma(rng), a);
        const TwoLevelUnitary u = propagate(g, Detuning::constant(0.0));
        EXPECT_NEAR(u.transfer(), std::pow(std::sin(a / 2), 2), 1e-7);
    }
}

TEST(Propagate, WeakGaussianMatchesFourierTransform) {
    // First order: P = (A/2)^2 exp(-(2 pi delta sigma)^2)
    const double area = 0.01;
    const double sigma = 10.0;
    const PulseShape g = calibrate_area(PulseKind::gaussian, sigma, area);
    for (double d : {0.0, 5.0, 20.0, -20.0}) {
        const double w = 2 * kPi * 1e-3 * d;
        const double expected = area * area / 4 * std::exp(-w * w * sigma * sigma);
        EXPECT_NEAR(propagate(g, Detuning::constant(d)).transfer(), expected, 1e-2 * expected) << d;
    }
}

TEST(Propagate, UnitarityAndNormProperty) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_unitarity = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < 200; ++i) {
        const bool gauss = unit(rng) < 0.5;
        const PulseShape shape = gauss ? PulseShape::gaussian(1.0 + 20.0 * unit(rng), 50.0 * unit(rng))
                                       : PulseShape::square(0.1 + 40.0 * unit(rng), 80.0 * unit(rng));
        const TwoLevelUnitary u = propagate(shape, Detuning::constant(-60.0 + 120.0 * unit(rng)), 2 * kPi * unit(rng));
        worst_unitarity = std::max(worst_unitarity, u.unitarity_deviation());
        const double th = kPi * unit(rng);
        const double ph = 2 * kPi * unit(rng);
        const TwoLevelState s{{std::cos(th / 2), 0.0}, std::polar(std::sin(th / 2), ph)};
        worst_norm = std::max(worst_norm, std::abs(u.apply(s).norm_squared() - 1.0));
    }
    EXPECT_LT(worst_unitarity, 1e-8);
    EXPECT_LT(worst_norm, 1e-9);
}

TEST(Propagate, StepHalvingConverges) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    IntegratorOptions fine;
    fine.refinement = 2;
    for (double d : {0.0, 3.675, 9.1875, 40.0}) {
        const TwoLevelUnitary a = propagate(g, Detuning::constant(d), 0.3);
        const TwoLevelUnitary b = propagate(g, Detuning::constant(d), 0.3, fine);
        EXPECT_LT(max_entry_diff(a, b), 1e-7) << d;
    }
    const PulseShape sq = PulseShape::square(15.625, 32.0);
    EXPECT_LT(max_entry_diff(propagate(sq, Detuning::constant(17.0)), propagate(sq, Detuning::constant(17.0), 0, fine)),
              1e-7);
}

TEST(Propagate, SegmentsCompose) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 17.7);
    const double d = 6.5;
    const double phase = 0.7;
    const double split = 0.37 * g.window_us();
    const TwoLevelUnitary whole = propagate(g, Detuning::constant(d), phase);
    const TwoLevelUnitary first = propagate_segment(g, Detuning::constant(d), phase, 0.0, split);
    // The drive phase in the atom frame advances by -2 pi delta t.
    const double phase_at_split = phase - 2 * kPi * 1e-3 * d * split;
    const TwoLevelUnitary second = propagate_segment(g, Detuning::constant(d), phase_at_split, split, g.window_us());
    EXPECT_LT(max_entry_diff(second * first, whole), 1e-7);
}

TEST(Propagate, ProfileEqualsConstant) {
    const PulseShape sq = PulseShape::square(10.0, 20.0);
    const auto a = propagate(sq, Detuning::constant(7.0));
    const auto b = propagate(sq, Detuning::profile([](double) { return 7.0; }, 7.0));
    EXPECT_LT(max_entry_diff(a, b), 1e-12);
}

TEST(Propagate, DrivePhaseRotatesAxis) {
    // A resonant pi/2 pulse about x versus about y: same populations, the
    // coherence differs by the phase.
    const PulseShape h = calibrate_area(PulseKind::square, 7.8125, kPi / 2);
    const auto ux = propagate(h, Detuning::constant(0.0), 0.0);
    const auto uy = propagate(h, Detuning::constant(0.0), kPi / 2);
    EXPECT_NEAR(ux.transfer(), uy.transfer(), 1e-12);
    EXPECT_NEAR(std::abs(std::arg(uy.u10) - std::arg(ux.u10)), kPi / 2, 1e-9);
}

TEST(Propagate, StepLimitIsAConfigError) {
    IntegratorOptions opts;
    opts.max_steps = 10;
    EXPECT_THROW(propagate(PulseShape::square(100.0, 50.0), Detuning::constant(0.0), 0.0, opts), ConfigError);
    opts = IntegratorOptions{};
    opts.steps_per_cycle = 10;
    EXPECT_THROW(propagate(PulseShape::square(1.0, 1.0), Detuning::constant(0.0), 0.0, opts), ConfigError);
}

TEST(Phase, Wrap) {
    EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
    EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
    EXPECT_NEAR(wrap_phase(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_phase(0.5 + 4 * kPi), 0.5, 1e-12);
    EXPECT_NEAR(wrap_phase(-0.5 - 2 * kPi), -0.5, 1e-12);
}

TEST(Phase, RelativePhaseUndefinedAtFullTransfer) {
    const TwoLevelUnitary u = propagate(calibrate_pi_pulse(PulseKind::square, 15.625), Detuning::constant(0.0));
    EXPECT_TRUE(std::isnan(relative_phase(u)));
}

TEST(SpectatorPhase, ResonantAtomIsADomainError) {
    EXPECT_THROW(spectator_phase(calibrate_pi_pulse(PulseKind::gaussian, 35.35), 0.0), DomainError);
}

TEST(SpectatorPhase, OddInDetuning) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    for (double d : {1.0, 4.0, 9.1875, 30.0}) {
        EXPECT_NEAR(spectator_phase(g, d), -spectator_phase(g, -d), 1e-9) << d;
    }
}

TEST(SpectatorPhase, NeighbourAtTwoAndAHalfMicrons) {
    // Reference value from an independent adaptive ODE solve of the same model.
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    const double d = std::abs(axial_slope_khz_per_um(FieldConfig::paper_defaults())) * 2.5;
    EXPECT_NEAR(spectator_phase(g, d) / kPi, 0.2345, 1e-3);
}

TEST(SpectatorPhase, FarDetuningApproachesAdiabaticShift) {
    // Far off resonance the pulse only light-shifts the levels apart by
    // Omega(t)^2 / 2 delta.
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    const double d = 200.0;
    const double w0 = g.peak_rabi_khz;
    const double integral_sq = w0 * w0 * 35.35 * std::sqrt(kPi) * std::erf(4.0);
    const double light_shift = 2 * kPi * 1e-3 * integral_sq / (2 * d);
    EXPECT_NEAR(std::abs(spectator_phase(g, d)), light_shift, 1e-2 * light_shift);
}

TEST(Spectrum, ResolutionOfLongestPulse) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    const std::vector<double> offsets{0.0, 2.5, -2.5};
    const auto s = transfer_spectrum(g, offsets, FieldConfig::paper_defaults());
    EXPECT_GE(s[0].transfer, 0.99);
    EXPECT_LE(s[1].transfer, 0.05);
    EXPECT_NEAR(s[1].transfer, s[2].transfer, 1e-9);
}

TEST(Spectrum, PresetsAreNested) {
    std::vector<double> offsets;
    for (int i = 0; i < 41; ++i) offsets.push_back(-15.0 + 0.75 * i);
    const FieldConfig cfg = FieldConfig::paper_defaults();
    std::vector<std::vector<SpectrumPoint>> spectra;
    for (double sigma : {8.85, 17.7, 35.35}) {
        spectra.push_back(transfer_spectrum(calibrate_pi_pulse(PulseKind::gaussian, sigma), offsets, cfg, 0));
    }
    auto width = [](const std::vector<SpectrumPoint> &s) {
        double sum = 0.0;
        for (const auto &p : s) sum += p.transfer;
        return sum;
    };
    EXPECT_GT(width(spectra[0]), width(spectra[1]));
    EXPECT_GT(width(spectra[1]), width(spectra[2]));
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] == 0.0) continue;
        EXPECT_GE(spectra[0][i].transfer + 1e-12, spectra[1][i].transfer) << offsets[i];
        EXPECT_GE(spectra[1][i].transfer + 1e-12, spectra[2][i].transfer) << offsets[i];
    }
}

TEST(Spectrum, IndependentOfWorkerCount) {
    std::vector<double> offsets{-3.0, -1.0, 0.0, 0.5, 2.0};
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 8.85);
    const auto a = transfer_spectrum(g, offsets, FieldConfig::paper_defaults(), 1);
    const auto b = transfer_spectrum(g, offsets, FieldConfig::paper_defaults(), 3);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].transfer, b[i].transfer);
}

TEST(RabiCurve, StartsAtZeroAndPeaksAtPiTime) {
    const std::vector<double> t{0.0, 7.8125, 15.625, 31.25};
    const auto c = rabi_curve(32.0, t, 0.0);
    EXPECT_EQ(c[0].transfer, 0.0);
    EXPECT_NEAR(c[1].transfer, 0.5, 1e-9);
    EXPECT_NEAR(c[2].transfer, 1.0, 1e-9);
    EXPECT_NEAR(c[3].transfer, 0.0, 1e-9);
}

}  // namespace
}  // namespace nareg
