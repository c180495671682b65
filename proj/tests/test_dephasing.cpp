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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/errors.hpp"

namespace nareg {
namespace {

ThermalConfig with_trials(std::uint64_t trials, std::uint64_t seed = 1) {
    ThermalConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

ThermalConfig frozen(std::uint64_t trials) {
    ThermalConfig cfg = with_trials(trials);
    cfg.temperature_uk = 1e-12;
    return cfg;
}

double contrast_at(const ThermalConfig &cfg, const FieldConfig &field, double t, const EchoOptions &opts = {}) {
    const std::vector<double> times{t};
    return echo_contrast(cfg, field, times, opts).front().contrast;
}

TEST(Thermal, PositionSpread) {
    const double kb = 1.380649e-23;
    const double m = 2.20695e-25;
    const double omega = 2 * std::numbers::pi * 1600.0;
    const double sigma_m = std::sqrt(kb * 80e-6 / m) / omega;
    EXPECT_NEAR(position_std_um(ThermalConfig{}), sigma_m * 1e6, 1e-9);
    EXPECT_NEAR(position_std_um(ThermalConfig{}), 7.04, 0.01);
    EXPECT_NEAR(velocity_std_um_per_us(ThermalConfig{}), std::sqrt(kb * 80e-6 / m), 1e-12);
}

TEST(Thermal, Validation) {
    ThermalConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.temperature_uk = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ThermalConfig{};
    cfg.radial_freq_khz = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ThermalConfig{};
    cfg.trials = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Thermal, SampleStatistics) {
    const ThermalConfig cfg = with_trials(100000);
    const double sigma = position_std_um(cfg);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        const EchoTrialSample s = sample_trial(cfg, i);
        sum += s.y0_um;
        sum_sq += s.z0_um * s.z0_um;
    }
    const double n = static_cast<double>(cfg.trials);
    EXPECT_NEAR(sum / n, 0.0, 4 * sigma / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(sum_sq / n), sigma, 0.02 * sigma);
}

TEST(Thermal, SampleDependsOnlyOnSeedAndIndex) {
    const ThermalConfig cfg = with_trials(10, 42);
    const EchoTrialSample a = sample_trial(cfg, 7);
    const EchoTrialSample b = sample_trial(cfg, 7);
    EXPECT_EQ(a.y0_um, b.y0_um);
    EXPECT_EQ(a.vz0_um_per_us, b.vz0_um_per_us);
    EXPECT_NE(a.y0_um, sample_trial(cfg, 8).y0_um);
}

TEST(TrialDetuning, FrozenAtomSeesNothing) {
    const ThermalConfig cfg;
    const EchoTrialSample rest{};
    FieldConfig field;
    field.axis_offset_y_um = 9.0;
    for (double t : {0.0, 100.0, 333.3}) EXPECT_EQ(trial_detuning_hz(rest, cfg, field, t), 0.0);
}

TEST(TrialDetuning, PeriodicInTime) {
    const ThermalConfig cfg;
    const FieldConfig field;
    const EchoTrialSample s{3.0, -5.0, 0.02, 0.07};
    const double period = 1e3 / cfg.radial_freq_khz;
    for (double t : {0.0, 17.0, 200.0, 480.0}) {
        const double a = trial_detuning_hz(s, cfg, field, t);
        EXPECT_NEAR(trial_detuning_hz(s, cfg, field, t + period), a, 1e-9 * (1 + std::abs(a)));
        EXPECT_LE(std::abs(a), trial_detuning_bound_hz(s, cfg, field) * (1 + 1e-12));
    }
}

TEST(TrialDetuning, CrossTermOnOffsetAxis) {
    // 7 um oscillation amplitude on a 15 um y offset: k ((y + 15)^2 - 15^2),
    // k = -0.689 Hz/um^2, swings between k(49 - 210) and k(49 + 210).
    const ThermalConfig cfg;
    FieldConfig field;
    field.axis_offset_y_um = 15.0;
    field.axis_offset_z_um = 0.0;
    const EchoTrialSample s{7.0, 0.0, 0.0, 0.0};
    double lo = 1e300;
    double hi = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double d = trial_detuning_hz(s, cfg, field, 0.625 * i);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    const double k = -2450.0 * 1e3 * 2.8125e-7;
    EXPECT_NEAR(hi - lo, std::abs(k) * 420.0, 1e-6);
    EXPECT_GT(hi - lo, 100.0);
    EXPECT_LT(hi - lo, 1000.0);
}

TEST(Echo, FrozenEnsembleKeepsFullContrast) {
    const std::vector<double> times{50.0, 600.0, 1250.0};
    for (const auto &p : echo_contrast(frozen(200), FieldConfig{}, times)) EXPECT_GT(p.contrast, 1.0 - 1e-9);
}

TEST(Echo, ContrastAt600usAndRevival) {
    const ThermalConfig cfg = with_trials(100000);
    const std::vector<double> times{600.0, 1250.0};
    const auto pts = echo_contrast(cfg, FieldConfig{}, times);
    EXPECT_NEAR(pts[0].contrast, 0.35, 0.10);
    EXPECT_GT(pts[1].contrast, pts[0].contrast);
    EXPECT_LT(pts[0].stderr_estimate, 0.01);
}

TEST(Echo, ContrastBoundsAndShortTimeLimit) {
    const ThermalConfig cfg = with_trials(5000);
    std::vector<double> times;
    for (int t = 25; t <= 1400; t += 75) times.push_back(t);
    for (const auto &p : echo_contrast(cfg, FieldConfig{}, times)) {
        EXPECT_GE(p.contrast, 0.0);
        EXPECT_LE(p.contrast, 1.0 + 1e-12);
    }
    EXPECT_GT(contrast_at(cfg, FieldConfig{}, 1.0), 0.999);
}

TEST(Echo, RejectsNonPositiveTimes) {
    const std::vector<double> times{0.0};
    EXPECT_THROW(echo_contrast(with_trials(10), FieldConfig{}, times), ConfigError);
}

TEST(Echo, StepHalving) {
    const ThermalConfig cfg = with_trials(5000);
    EchoOptions fine;
    fine.refinement = 2;
    for (double t : {150.0, 600.0, 1000.0}) {
        EXPECT_LT(std::abs(contrast_at(cfg, FieldConfig{}, t) - contrast_at(cfg, FieldConfig{}, t, fine)), 1e-3) << t;
    }
}

TEST(Echo, IndependentOfWorkers) {
    const ThermalConfig cfg = with_trials(3000, 9);
    EchoOptions one;
    one.workers = 1;
    EchoOptions many;
    many.workers = 4;
    const std::vector<double> times{300.0, 600.0};
    const auto a = echo_contrast(cfg, FieldConfig{}, times, one);
    const auto b = echo_contrast(cfg, FieldConfig{}, times, many);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].contrast, b[i].contrast);
        EXPECT_EQ(a[i].stderr_estimate, b[i].stderr_estimate);
    }
}

TEST(Echo, SeedsAgreeStatistically) {
    const double a = contrast_at(with_trials(100000, 1), FieldConfig{}, 600.0);
    const double b = contrast_at(with_trials(100000, 2), FieldConfig{}, 600.0);
    EXPECT_NE(a, b);
    EXPECT_LT(std::abs(a - b), 0.01);
}

TEST(Echo, BeatsRamseyAwayFromTheRadialPeriod) {
    const ThermalConfig cfg = with_trials(5000);
    const std::vector<double> times{25.0, 100.0, 200.0, 300.0, 900.0, 1000.0, 1250.0, 1400.0};
    const auto echo = echo_contrast(cfg, FieldConfig{}, times);
    const auto ramsey = ramsey_contrast(cfg, FieldConfig{}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        EXPECT_GE(echo[i].contrast + 1e-12, ramsey[i].contrast) << times[i];
    }
}

TEST(Echo, RamseyRecoversNearOneRadialPeriod) {
    // The term linear in the oscillation integrates to zero over one full
    // period, while the echo's two half-period windows see it with opposite
    // signs. Around t = 1/f_r free evolution therefore keeps more contrast.
    const ThermalConfig cfg = with_trials(5000);
    const std::vector<double> times{600.0};
    EXPECT_GT(ramsey_contrast(cfg, FieldConfig{}, times).front().contrast,
              echo_contrast(cfg, FieldConfig{}, times).front().contrast + 0.3);
}

TEST(Echo, OffsetDrivesDephasing) {
    const ThermalConfig cfg = with_trials(5000);
    FieldConfig centered;
    centered.axis_offset_z_um = 0.0;
    EXPECT_GT(contrast_at(cfg, centered, 600.0), contrast_at(cfg, FieldConfig{}, 600.0));
}

TEST(EchoPulsed, ShortPulsesApproachIdeal) {
    const ThermalConfig cfg = with_trials(5000);
    const std::vector<double> times{600.0};
    const double ideal = echo_contrast(cfg, FieldConfig{}, times).front().contrast;
    const double pulsed =
        echo_contrast_pulsed(cfg, FieldConfig{}, times, PulseShape::square(1.0, 0.0)).front().contrast;
    EXPECT_LT(std::abs(ideal - pulsed), 0.02);
}

TEST(EchoPulsed, FrozenEnsembleAnyPulse) {
    const std::vector<double> times{100.0, 600.0};
    for (const PulseShape &p : {PulseShape::square(15.625, 0.0), PulseShape::gaussian(5.0, 0.0)}) {
        for (const auto &pt : echo_contrast_pulsed(frozen(50), FieldConfig{}, times, p)) {
            EXPECT_GE(pt.contrast, 0.999);
        }
    }
}

TEST(EchoPulsed, PulseLongerThanHalfEchoTime) {
    const std::vector<double> times{20.0};
    EXPECT_THROW(echo_contrast_pulsed(with_trials(10), FieldConfig{}, times, PulseShape::square(15.0, 0.0)),
                 ConfigError);
}

}  // namespace
}  // namespace nareg
