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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/field_map.hpp"
#include "nareg/pulse_program.hpp"
#include "nareg/register.hpp"

namespace nareg {

enum class EventKind { rot, pi, pi2 };

const char *to_string(EventKind kind);

/// One microwave pulse placed on the time axis.
struct PulseEvent {
    double start_us = 0.0;
    EventKind kind = EventKind::pi;
    std::string shape_name;
    /// Calibrated to the requested rotation angle.
    PulseShape shape;
    double angle_rad = 0.0;
    /// Drive phase at the start of the pulse.
    double phase_rad = 0.0;
    /// Carrier relative to the resonance at x = 0.
    double carrier_detuning_khz = 0.0;
    AtomLabel target = 1;

    double end_us() const { return start_us + shape.window_us(); }

    friend bool operator==(const PulseEvent &, const PulseEvent &) = default;
};

struct Schedule {
    std::vector<AtomGeometry> geometry;
    FieldConfig field;
    std::vector<PulseEvent> events;
    /// Accumulated spectator phase per atom after the whole program.
    std::map<AtomLabel, double> ledger;
    bool measure = false;
    double total_duration_us = 0.0;

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

struct CompileOptions {
    /// Idle time inserted after every pulse (source retuning).
    double dead_time_us = 1.0;
    /// Shapes available in addition to the program's DEFINE lines; program
    /// definitions win on a name clash.
    std::vector<ShapeDef> shapes;
    /// Used by pulses without a SHAPE clause.
    std::string default_shape;
    IntegratorOptions integrator{};
};

/// Lays the program out sequentially, resolves each pulse's carrier from its
/// target's axial position and fills the spectator-phase ledger. Throws
/// ParseError for labels outside the geometry and ConfigError for unknown
/// shapes.
Schedule compile(const Program &program, std::span<const AtomGeometry> geometry, const FieldConfig &field,
                 const CompileOptions &options = {});

struct ShotRecord {
    std::uint64_t shot = 0;
    std::string readout;
    std::vector<AtomLabel> survivors;
    std::map<AtomLabel, double> phase_ledger;
};

struct ExecuteOptions {
    double pump_fidelity = 1.0;
    /// 0 = hardware concurrency. Records do not depend on this.
    unsigned workers = 0;
    IntegratorOptions integrator{};
};

struct ExecutionResult {
    std::vector<ShotRecord> shots;
    /// Fraction of shots in which each atom (label order) read 1.
    std::vector<double> ones_fraction;
    /// Number of shots per distinct readout string.
    std::map<std::string, std::uint64_t> histogram;
};

/// Runs the schedule `shots` times on freshly loaded copies of `reg`'s
/// geometry. Shot i draws from a seed derived from (reg.seed(), i). Throws
/// ConfigError when reg's geometry differs from the schedule's.
ExecutionResult execute(const Schedule &schedule, const RegisterState &reg, const DetectionModel &det,
                        std::uint64_t shots, const ExecuteOptions &options = {});

std::string schedule_to_json(const Schedule &schedule, int indent = 2);
std::string shots_to_json(const ExecutionResult &result, int indent = 2);

}  // namespace nareg
