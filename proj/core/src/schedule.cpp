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

#include "nareg/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "nareg/errors.hpp"
#include "nareg/parallel.hpp"

namespace nareg {

const char *to_string(EventKind kind) {
    switch (kind) {
        case EventKind::rot:
            return "rot";
        case EventKind::pi:
            return "pi";
        case EventKind::pi2:
            return "pi2";
    }
    return "?";
}

namespace {

struct ResolvedPulse {
    EventKind kind;
    const PulseTarget *target;
    double area_rad;
};

ResolvedPulse resolve(const Statement &stmt) {
    if (const auto *r = std::get_if<RotStmt>(&stmt)) return {EventKind::rot, &r->pulse, r->angle_rad};
    if (const auto *p = std::get_if<PiStmt>(&stmt)) return {EventKind::pi, &p->pulse, std::numbers::pi};
    const auto &h = std::get<Pi2Stmt>(stmt);
    return {EventKind::pi2, &h.pulse, 0.5 * std::numbers::pi};
}

const ShapeDef &lookup_shape(const Program &program, const CompileOptions &options, const std::string &name) {
    if (const ShapeDef *def = program.find_shape(name)) return *def;
    for (const auto &def : options.shapes) {
        if (def.name == name) return def;
    }
    throw ConfigError("compile: unknown shape name '" + name + "'");
}

}  // namespace

Schedule compile(const Program &program, std::span<const AtomGeometry> geometry, const FieldConfig &field,
                 const CompileOptions &options) {
    field.validate();
    validate_geometry(geometry);
    check_labels(program, geometry.size());
    if (!std::isfinite(options.dead_time_us) || options.dead_time_us < 0) {
        throw ConfigError("compile: dead time must be >= 0");
    }

    Schedule sched;
    sched.geometry.assign(geometry.begin(), geometry.end());
    sched.field = field;
    for (const auto &g : geometry) sched.ledger[g.label] = 0.0;

    double cursor = 0.0;
    double horizon = 0.0;
    for (const auto &stmt : program.statements) {
        if (std::holds_alternative<InitStmt>(stmt)) continue;
        if (std::holds_alternative<MeasureStmt>(stmt)) {
            sched.measure = true;
            continue;
        }
        if (const auto *wait = std::get_if<WaitStmt>(&stmt)) {
            cursor += wait->duration_us;
            horizon = std::max(horizon, cursor);
            continue;
        }

        const ResolvedPulse pulse = resolve(stmt);
        const PulseTarget &target = *pulse.target;
        const std::string shape_name = target.shape.value_or(options.default_shape);
        if (shape_name.empty()) {
            throw ConfigError("compile: pulse on atom " + std::to_string(target.atom) +
                              " has no SHAPE and no default shape is configured");
        }
        const ShapeDef &def = lookup_shape(program, options, shape_name);

        PulseEvent ev;
        ev.start_us = cursor;
        ev.kind = pulse.kind;
        ev.shape_name = shape_name;
        ev.shape = calibrate_area(def.kind, def.duration_us, pulse.area_rad, def.truncation);
        ev.angle_rad = pulse.area_rad;
        // A negative rotation is the positive one about the opposite axis.
        ev.phase_rad = wrap_phase(target.phase_rad + (pulse.area_rad < 0 ? std::numbers::pi : 0.0));
        const double aim_um = geometry[static_cast<std::size_t>(target.atom - 1)].axial_position_um + target.offset_um;
        ev.carrier_detuning_khz = axial_detuning_khz(field, aim_um) + target.detune_khz;
        ev.target = target.atom;

        for (const auto &g : geometry) {
            if (g.label == ev.target) continue;
            const double delta = axial_detuning_khz(field, g.axial_position_um) - ev.carrier_detuning_khz;
            if (delta == 0.0) continue;
            const double kick = spectator_phase(ev.shape, delta, options.integrator);
            sched.ledger[g.label] = wrap_phase(sched.ledger[g.label] + kick);
        }

        horizon = std::max(horizon, ev.end_us());
        cursor = ev.end_us() + options.dead_time_us;
        sched.events.push_back(std::move(ev));
    }
    sched.total_duration_us = horizon;
    return sched;
}

ExecutionResult execute(const Schedule &schedule, const RegisterState &reg, const DetectionModel &det,
                        std::uint64_t shots, const ExecuteOptions &options) {
    det.validate();
    if (reg.geometry() != schedule.geometry) {
        throw ConfigError("execute: register geometry does not match the geometry the schedule was compiled for");
    }

    std::vector<std::vector<AtomPulse>> effects;
    effects.reserve(schedule.events.size());
    for (const auto &ev : schedule.events) {
        effects.push_back(pulse_effects(schedule.geometry, ev.target, ev.shape, schedule.field,
                                        ev.carrier_detuning_khz, ev.phase_rad, options.integrator));
    }

    ExecutionResult result;
    result.shots.resize(static_cast<std::size_t>(shots));
    parallel_for(result.shots.size(), options.workers, [&](std::size_t shot) {
        RegisterState r = RegisterState::load(schedule.geometry, derive_seed(reg.seed(), shot));
        r = initialize(std::move(r), options.pump_fidelity);
        for (const auto &e : effects) r = apply_pulse(std::move(r), e);
        Measurement m = measure(std::move(r), det);

        ShotRecord &rec = result.shots[shot];
        rec.shot = shot;
        rec.readout = std::move(m.readout);
        rec.survivors = std::move(m.survivors);
        for (const auto &atom : m.state.atoms()) rec.phase_ledger[atom.geometry.label] = atom.ledger_rad;
    });

    result.ones_fraction.assign(schedule.geometry.size(), 0.0);
    for (const auto &rec : result.shots) {
        ++result.histogram[rec.readout];
        for (std::size_t i = 0; i < rec.readout.size(); ++i) {
            if (rec.readout[i] == '1') result.ones_fraction[i] += 1.0;
        }
    }
    if (shots > 0) {
        for (double &f : result.ones_fraction) f /= static_cast<double>(shots);
    }
    return result;
}

std::string schedule_to_json(const Schedule &schedule, int indent) {
    using nlohmann::json;
    json events = json::array();
    for (const auto &ev : schedule.events) {
        json e{{"t_start_us", ev.start_us},
               {"t_end_us", ev.end_us()},
               {"kind", to_string(ev.kind)},
               {"shape", ev.shape_name},
               {"envelope", to_string(ev.shape.kind)},
               {"sigma_or_len_us", ev.shape.duration_us},
               {"peak_rabi_khz", ev.shape.peak_rabi_khz},
               {"angle_rad", ev.angle_rad},
               {"phase_rad", ev.phase_rad},
               {"carrier_detuning_khz", ev.carrier_detuning_khz},
               {"target", ev.target}};
        if (ev.shape.kind == PulseKind::gaussian) e["truncation"] = ev.shape.truncation;
        events.push_back(std::move(e));
    }
    json ledger = json::object();
    for (const auto &[label, rad] : schedule.ledger) ledger[std::to_string(label)] = rad;
    json geometry = json::array();
    for (const auto &g : schedule.geometry) geometry.push_back({{"label", g.label}, {"x_um", g.axial_position_um}});

    json doc{{"events", std::move(events)},
             {"ledger", std::move(ledger)},
             {"geometry", std::move(geometry)},
             {"measure", schedule.measure},
             {"total_duration_us", schedule.total_duration_us}};
    return doc.dump(indent);
}

std::string shots_to_json(const ExecutionResult &result, int indent) {
    using nlohmann::json;
    json records = json::array();
    for (const auto &rec : result.shots) {
        json ledger = json::object();
        for (const auto &[label, rad] : rec.phase_ledger) ledger[std::to_string(label)] = rad;
        records.push_back({{"shot", rec.shot},
                           {"readout_string", rec.readout},
                           {"survivors", rec.survivors},
                           {"phase_ledger", std::move(ledger)}});
    }
    json fractions = json::object();
    for (std::size_t i = 0; i < result.ones_fraction.size(); ++i) {
        fractions[std::to_string(i + 1)] = result.ones_fraction[i];
    }
    json doc{{"shots", result.shots.size()},
             {"records", std::move(records)},
             {"histogram", result.histogram},
             {"ones_fraction", std::move(fractions)}};
    return doc.dump(indent);
}

}  // namespace nareg
