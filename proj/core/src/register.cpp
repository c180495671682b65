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

#include <cmath>
#include <string>

#include "nareg/errors.hpp"

namespace nareg {

void DetectionModel::validate() const {
    auto ok = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 0.05; };
    if (!ok(eps_0_as_1) || !ok(eps_1_as_0)) {
        throw ConfigError("detection: error probabilities must lie in [0, 0.05]");
    }
}

RegisterState RegisterState::load(std::span<const AtomGeometry> geometry, std::uint64_t seed) {
    validate_geometry(geometry);
    RegisterState reg;
    reg.seed_ = seed;
    reg.rng_.seed(seed);
    reg.atoms_.reserve(geometry.size());
    for (const auto &g : geometry) reg.atoms_.push_back({g, TwoLevelState::ground(), 0.0});
    return reg;
}

std::vector<AtomGeometry> RegisterState::geometry() const {
    std::vector<AtomGeometry> out;
    out.reserve(atoms_.size());
    for (const auto &a : atoms_) out.push_back(a.geometry);
    return out;
}

std::size_t RegisterState::index_of(AtomLabel label) const {
    if (label < 1 || static_cast<std::size_t>(label) > atoms_.size()) {
        throw ConfigError("register: unknown atom label " + std::to_string(label) + " (register holds " +
                          std::to_string(atoms_.size()) + " atoms)");
    }
    return static_cast<std::size_t>(label - 1);
}

RegisterState initialize(RegisterState reg, double pump_fidelity) {
    if (!std::isfinite(pump_fidelity) || pump_fidelity < 0.0 || pump_fidelity > 1.0) {
        throw ConfigError("initialize: pump fidelity must lie in [0, 1]");
    }
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (auto &atom : reg.atoms()) {
        if (!atom.state) throw ConfigError("initialize: atom " + std::to_string(atom.geometry.label) +
                                           " was removed; load a fresh register");
    }
    for (auto &atom : reg.atoms()) {
        atom.state = uniform(reg.rng()) < pump_fidelity ? TwoLevelState::ground() : TwoLevelState::excited();
        atom.ledger_rad = 0.0;
    }
    return reg;
}

std::vector<AtomPulse> pulse_effects(std::span<const AtomGeometry> geometry, AtomLabel target,
                                     const PulseShape &pulse, const FieldConfig &cfg, double carrier_detuning_khz,
                                     double phase_rad, const IntegratorOptions &options) {
    std::vector<AtomPulse> effects;
    effects.reserve(geometry.size());
    for (const auto &g : geometry) {
        const double delta = axial_detuning_khz(cfg, g.axial_position_um) - carrier_detuning_khz;
        effects.push_back({propagate(pulse, Detuning::constant(delta), phase_rad, options), delta,
                           g.label != target && delta != 0.0});
    }
    return effects;
}

std::vector<AtomPulse> pulse_effects(const RegisterState &reg, AtomLabel target, const PulseShape &pulse,
                                     const FieldConfig &cfg, double carrier_detuning_khz, double phase_rad,
                                     const IntegratorOptions &options) {
    std::vector<AtomPulse> effects;
    effects.reserve(reg.size());
    for (const auto &atom : reg.atoms()) {
        if (!atom.state) {
            effects.push_back({TwoLevelUnitary::identity(), 0.0, false});
            continue;
        }
        const double delta = axial_detuning_khz(cfg, atom.geometry.axial_position_um) - carrier_detuning_khz;
        effects.push_back({propagate(pulse, Detuning::constant(delta), phase_rad, options), delta,
                           atom.geometry.label != target && delta != 0.0});
    }
    return effects;
}

RegisterState apply_pulse(RegisterState reg, std::span<const AtomPulse> effects) {
    if (effects.size() != reg.size()) throw ConfigError("apply_pulse: effect list does not match register size");
    for (std::size_t i = 0; i < effects.size(); ++i) {
        auto &atom = reg.atoms()[i];
        if (!atom.state) continue;
        const TwoLevelUnitary &u = effects[i].unitary;
        atom.state = u.apply(*atom.state);
        if (effects[i].spectator) {
            atom.ledger_rad = wrap_phase(atom.ledger_rad + wrap_phase(std::arg(u.u00) - std::arg(u.u11)));
        }
    }
    return reg;
}

RegisterState address(RegisterState reg, AtomLabel target, const PulseShape &pulse, const FieldConfig &cfg,
                      double phase_rad, const IntegratorOptions &options) {
    cfg.validate();
    const std::size_t idx = reg.index_of(target);
    if (!reg.atoms()[idx].state) {
        throw DomainError("address: target atom " + std::to_string(target) + " has been removed");
    }
    const double carrier = axial_detuning_khz(cfg, reg.atoms()[idx].geometry.axial_position_um);
    const auto effects = pulse_effects(reg, target, pulse, cfg, carrier, phase_rad, options);
    return apply_pulse(std::move(reg), effects);
}

Measurement measure(RegisterState reg, const DetectionModel &det) {
    det.validate();
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Measurement m;
    m.readout.reserve(reg.size());
    for (auto &atom : reg.atoms()) {
        if (!atom.state) {
            m.readout.push_back('0');
            continue;
        }
        // Two draws per present atom regardless of outcome keeps the stream
        // aligned across atoms.
        const double born = uniform(reg.rng());
        const double flip = uniform(reg.rng());
        const double p1 = atom.state->population1() / atom.state->norm_squared();
        const bool projected_one = born < p1;
        const bool reads_one = projected_one ? !(flip < det.eps_1_as_0) : flip < det.eps_0_as_1;
        if (reads_one) {
            atom.state = projected_one ? TwoLevelState::excited() : TwoLevelState::ground();
            m.survivors.push_back(atom.geometry.label);
            m.readout.push_back('1');
        } else {
            atom.state.reset();
            m.readout.push_back('0');
        }
    }
    m.state = std::move(reg);
    return m;
}

}  // namespace nareg
