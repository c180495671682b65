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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/field_map.hpp"

namespace nareg {

enum class Occupancy { present, removed };

/// Classical flip channel applied after projection by the push-out readout.
struct DetectionModel {
    /// |0> atom survives the push-out and reads 1.
    double eps_0_as_1 = 0.01;
    /// |1> atom is lost and reads 0.
    double eps_1_as_0 = 0.01;

    static DetectionModel ideal() { return {0.0, 0.0}; }
    static DetectionModel paper_defaults() { return {}; }

    /// Both probabilities must lie in [0, 0.05].
    void validate() const;
};

struct RegisterAtom {
    AtomGeometry geometry;
    /// Empty once the atom has been pushed out of the trap.
    std::optional<TwoLevelState> state;
    /// Accumulated spectator phase, wrapped into (-pi, pi].
    double ledger_rad = 0.0;

    Occupancy occupancy() const { return state ? Occupancy::present : Occupancy::removed; }
};

/// Ordered string of single atoms, each an independent qubit. Holds its own
/// random engine so initialization and readout are reproducible from the seed.
class RegisterState {
   public:
    /// Freshly loaded register: every atom present, in |0>, empty ledger.
    static RegisterState load(std::span<const AtomGeometry> geometry, std::uint64_t seed);

    const std::vector<RegisterAtom> &atoms() const { return atoms_; }
    std::vector<RegisterAtom> &atoms() { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    std::uint64_t seed() const { return seed_; }
    std::vector<AtomGeometry> geometry() const;

    /// Index of the atom with this label; throws ConfigError if unknown.
    std::size_t index_of(AtomLabel label) const;

    std::mt19937_64 &rng() { return rng_; }

   private:
    std::vector<RegisterAtom> atoms_;
    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;
};

/// Optical pumping: each atom lands in |0> with probability `pump_fidelity`,
/// otherwise in |1>. Clears the ledger. Requires every atom to be present.
RegisterState initialize(RegisterState reg, double pump_fidelity = 1.0);

/// Effect of one microwave pulse on one atom.
struct AtomPulse {
    TwoLevelUnitary unitary;
    /// Atom-minus-carrier detuning seen by this atom.
    double detuning_khz = 0.0;
    /// Non-target atom off resonance; its relative phase goes into the ledger.
    bool spectator = false;
};

/// Per-atom propagators for a pulse whose carrier sits `carrier_detuning_khz`
/// from the x = 0 resonance. Removed atoms get the identity.
std::vector<AtomPulse> pulse_effects(const RegisterState &reg, AtomLabel target, const PulseShape &pulse,
                                     const FieldConfig &cfg, double carrier_detuning_khz, double phase_rad = 0.0,
                                     const IntegratorOptions &options = {});

/// Same, evaluated for a bare geometry (all atoms present).
std::vector<AtomPulse> pulse_effects(std::span<const AtomGeometry> geometry, AtomLabel target,
                                     const PulseShape &pulse, const FieldConfig &cfg, double carrier_detuning_khz,
                                     double phase_rad = 0.0, const IntegratorOptions &options = {});

/// Applies precomputed per-atom effects (index-aligned with reg.atoms()).
RegisterState apply_pulse(RegisterState reg, std::span<const AtomPulse> effects);

/// Resonant pulse on `target`; every other present atom is driven at its own
/// detuning nu' (x_i - x_target) and its relative phase is added to the ledger.
/// Throws ConfigError for an unknown label and DomainError for a removed target.
RegisterState address(RegisterState reg, AtomLabel target, const PulseShape &pulse, const FieldConfig &cfg,
                      double phase_rad = 0.0, const IntegratorOptions &options = {});

struct Measurement {
    RegisterState state;
    /// One character per atom in label order; removed atoms read '0'.
    std::string readout;
    std::vector<AtomLabel> survivors;
};

/// Push-out readout: Born projection on |amp1|^2, then the flip channel.
/// Atoms reading 0 are removed; survivors keep their projected state.
Measurement measure(RegisterState reg, const DetectionModel &det);

}  // namespace nareg
