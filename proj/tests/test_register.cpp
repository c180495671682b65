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

#include "nareg/register.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/errors.hpp"

namespace nareg {
namespace {

std::vector<AtomGeometry> five_atoms() {
    const std::vector<double> xs{-40.0, -20.0, 0.0, 20.0, 40.0};
    return make_geometry(xs);
}

PulseShape g70() { return calibrate_pi_pulse(PulseKind::gaussian, 35.35); }

TEST(Register, LoadsInGround) {
    const auto reg = RegisterState::load(five_atoms(), 7);
    ASSERT_EQ(reg.size(), 5u);
    for (const auto &a : reg.atoms()) {
        ASSERT_TRUE(a.state);
        EXPECT_EQ(a.state->population1(), 0.0);
        EXPECT_EQ(a.ledger_rad, 0.0);
    }
    EXPECT_EQ(reg.index_of(3), 2u);
    EXPECT_THROW(reg.index_of(6), ConfigError);
}

TEST(Register, PumpFidelity) {
    std::vector<double> xs;
    for (int i = 0; i < 4000; ++i) xs.push_back(i);
    const auto geometry = make_geometry(xs);
    const auto perfect = initialize(RegisterState::load(geometry, 1), 1.0);
    for (const auto &a : perfect.atoms()) EXPECT_EQ(a.state->population1(), 0.0);
    const auto inverted = initialize(RegisterState::load(geometry, 1), 0.0);
    for (const auto &a : inverted.atoms()) EXPECT_EQ(a.state->population1(), 1.0);
    const auto partial = initialize(RegisterState::load(geometry, 1), 0.7);
    double ground = 0;
    for (const auto &a : partial.atoms()) ground += a.state->population1() == 0.0 ? 1 : 0;
    // binomial, 4 sigma
    EXPECT_NEAR(ground / 4000.0, 0.7, 4 * std::sqrt(0.21 / 4000.0));
    EXPECT_THROW(initialize(RegisterState::load(geometry, 1), 1.5), ConfigError);
}

TEST(Register, AddressFlipsOnlyTheTarget) {
    const FieldConfig field;
    auto reg = initialize(RegisterState::load(five_atoms(), 3));
    reg = address(std::move(reg), 2, g70(), field);
    for (const auto &a : reg.atoms()) {
        if (a.geometry.label == 2) {
            EXPECT_GT(a.state->population1(), 1.0 - 1e-9);
            EXPECT_EQ(a.ledger_rad, 0.0);
        } else {
            EXPECT_LT(a.state->population1(), 1e-6);
            EXPECT_NE(a.ledger_rad, 0.0);
        }
        EXPECT_NEAR(a.state->norm_squared(), 1.0, 1e-9);
    }
}

TEST(Register, LedgerMatchesSpectatorPhase) {
    const FieldConfig field;
    const PulseShape pulse = g70();
    auto reg = initialize(RegisterState::load(five_atoms(), 3));
    reg = address(std::move(reg), 4, pulse, field);
    const double slope = axial_slope_khz_per_um(field);
    for (const auto &a : reg.atoms()) {
        if (a.geometry.label == 4) continue;
        const double delta = slope * (a.geometry.axial_position_um - 20.0);
        EXPECT_NEAR(a.ledger_rad, spectator_phase(pulse, delta), 1e-12) << a.geometry.label;
    }
}

TEST(Register, MeasureIdeal) {
    const FieldConfig field;
    auto reg = initialize(RegisterState::load(five_atoms(), 3));
    reg = address(std::move(reg), 2, g70(), field);
    reg = address(std::move(reg), 4, g70(), field);
    const Measurement m = measure(std::move(reg), DetectionModel::ideal());
    EXPECT_EQ(m.readout, "01010");
    EXPECT_EQ(m.survivors, (std::vector<AtomLabel>{2, 4}));
    for (const auto &a : m.state.atoms()) {
        EXPECT_EQ(a.occupancy(), (a.geometry.label == 2 || a.geometry.label == 4) ? Occupancy::present
                                                                                    : Occupancy::removed);
    }
}

TEST(Register, MeasurementRemovesAtoms) {
    const FieldConfig field;
    auto m = measure(initialize(RegisterState::load(five_atoms(), 3)), DetectionModel::ideal());
    EXPECT_EQ(m.readout, "00000");
    EXPECT_TRUE(m.survivors.empty());
    EXPECT_THROW(address(std::move(m.state), 1, g70(), field), DomainError);
}

TEST(Register, InitializeNeedsAllAtoms) {
    auto m = measure(initialize(RegisterState::load(five_atoms(), 3)), DetectionModel::ideal());
    EXPECT_THROW(initialize(std::move(m.state)), ConfigError);
}

TEST(Register, BornRuleOnSuperposition) {
    const FieldConfig field;
    const PulseShape half = calibrate_area(PulseKind::square, 7.8125, 3.14159265358979323846 / 2);
    int ones = 0;
    const int shots = 20000;
    for (int s = 0; s < shots; ++s) {
        const std::vector<double> xs{0.0};
        auto reg = initialize(RegisterState::load(make_geometry(xs), 1000 + s));
        reg = address(std::move(reg), 1, half, field);
        ones += measure(std::move(reg), DetectionModel::ideal()).readout == "1";
    }
    EXPECT_NEAR(ones / double(shots), 0.5, 4 * std::sqrt(0.25 / shots));
}

TEST(Register, SeedReproducibility) {
    auto run = [](std::uint64_t seed) {
        const std::vector<double> xs{0.0, 10.0, 20.0};
        auto reg = initialize(RegisterState::load(make_geometry(xs), seed), 0.5);
        return measure(std::move(reg), DetectionModel::paper_defaults()).readout;
    };
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(run(seed), run(seed));
}

TEST(Detection, Validation) {
    EXPECT_NO_THROW(DetectionModel::paper_defaults().validate());
    EXPECT_THROW((DetectionModel{0.06, 0.0}).validate(), ConfigError);
    EXPECT_THROW((DetectionModel{0.0, -0.01}).validate(), ConfigError);
}

TEST(Detection, FlipRates) {
    // |1> atoms read 0 with eps_1_as_0, |0> atoms read 1 with eps_0_as_1.
    const DetectionModel det{0.02, 0.04};
    std::vector<double> xs;
    for (int i = 0; i < 20000; ++i) xs.push_back(i);
    const auto geometry = make_geometry(xs);
    const auto zeros = measure(initialize(RegisterState::load(geometry, 5), 1.0), det);
    const auto ones = measure(initialize(RegisterState::load(geometry, 6), 0.0), det);
    double false_one = 0;
    double false_zero = 0;
    for (char c : zeros.readout) false_one += c == '1';
    for (char c : ones.readout) false_zero += c == '0';
    EXPECT_NEAR(false_one / 20000.0, 0.02, 4 * std::sqrt(0.02 * 0.98 / 20000.0));
    EXPECT_NEAR(false_zero / 20000.0, 0.04, 4 * std::sqrt(0.04 * 0.96 / 20000.0));
}

}  // namespace
}  // namespace nareg
