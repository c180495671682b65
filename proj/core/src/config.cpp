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

#include "nareg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nareg/errors.hpp"
#include "nareg/format.hpp"

namespace nareg {

namespace {

using nlohmann::json;

void check_keys(const json &obj, const std::string &where, const std::set<std::string> &allowed) {
    if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
    for (const auto &item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("config: unknown key '" + (where.empty() ? "" : where + ".") + item.key() + "'");
        }
    }
}

double number(const json &obj, const std::string &key, const std::string &where, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json &v = obj.at(key);
    if (!v.is_number()) throw ConfigError("config: '" + where + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t count(const json &obj, const std::string &key, const std::string &where, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json &v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError("config: '" + where + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

ShapeDef parse_shape(const std::string &name, const json &obj) {
    const std::string where = "shapes." + name + ".";
    check_keys(obj, "shapes." + name, {"kind", "sigma_us", "length_us", "truncation"});
    if (!obj.contains("kind") || !obj.at("kind").is_string()) {
        throw ConfigError("config: '" + where + "kind' must be \"square\" or \"gaussian\"");
    }
    ShapeDef def;
    def.name = name;
    def.kind = pulse_kind_from_string(obj.at("kind").get<std::string>());
    const std::string duration_key = def.kind == PulseKind::square ? "length_us" : "sigma_us";
    if (!obj.contains(duration_key)) throw ConfigError("config: '" + where + duration_key + "' is required");
    def.duration_us = number(obj, duration_key, where, 0.0);
    def.truncation = number(obj, "truncation", where, 4.0);
    PulseShape{def.kind, 0.0, def.duration_us, def.truncation}.validate();
    return def;
}

}  // namespace

std::vector<ShapeDef> RunConfig::default_shapes() {
    return {
        {"g17", PulseKind::gaussian, 8.85, 4.0},
        {"g35", PulseKind::gaussian, 17.7, 4.0},
        {"g70", PulseKind::gaussian, 35.35, 4.0},
        {"sq", PulseKind::square, 15.625, 4.0},
    };
}

const ShapeDef &RunConfig::shape(std::string_view name) const {
    for (const auto &s : shapes) {
        if (s.name == name) return s;
    }
    throw ConfigError("config: unknown shape '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    field.validate();
    make_geometry(atom_positions_um);
    thermal.validate();
    detection.validate();
    if (!(pump_fidelity >= 0.0 && pump_fidelity <= 1.0)) throw ConfigError("config: pump_fidelity must lie in [0, 1]");
    if (!std::isfinite(rabi_khz) || !(rabi_khz > 0)) throw ConfigError("config: rabi_khz must be > 0");
    for (const auto &s : shapes) PulseShape{s.kind, 0.0, s.duration_us, s.truncation}.validate();
    if (!default_shape.empty()) shape(default_shape);
    if (!std::isfinite(dead_time_us) || dead_time_us < 0) throw ConfigError("config: dead_time_us must be >= 0");
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
    std::vector<std::pair<std::string, std::string>> out{
        {"b0_gauss", format_double(field.b0_gauss)},
        {"b_grad_gauss_per_cm", format_double(field.b_grad_gauss_per_um / kGaussPerCmToGaussPerUm)},
        {"zeeman_coeff_mhz_per_gauss", format_double(field.zeeman_khz_per_gauss * 1.0e-3)},
        {"axis_offset_y_um", format_double(field.axis_offset_y_um)},
        {"axis_offset_z_um", format_double(field.axis_offset_z_um)},
        {"axial_slope_khz_per_um", format_double(axial_slope_khz_per_um(field))},
        {"temperature_uk", format_double(thermal.temperature_uk)},
        {"radial_freq_khz", format_double(thermal.radial_freq_khz)},
        {"atom_mass_kg", format_double(thermal.atom_mass_kg)},
        {"trials", std::to_string(thermal.trials)},
        {"thermal_seed", std::to_string(thermal.seed)},
        {"eps_0_as_1", format_double(detection.eps_0_as_1)},
        {"eps_1_as_0", format_double(detection.eps_1_as_0)},
        {"pump_fidelity", format_double(pump_fidelity)},
        {"rabi_khz", format_double(rabi_khz)},
        {"dead_time_us", format_double(dead_time_us)},
        {"seed", std::to_string(seed)},
    };
    std::string atoms;
    for (std::size_t i = 0; i < atom_positions_um.size(); ++i) {
        if (i) atoms += ' ';
        atoms += format_double(atom_positions_um[i]);
    }
    out.emplace_back("atoms_um", atoms);
    return out;
}

RunConfig parse_run_config(std::string_view json_text, RunConfig base) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    check_keys(doc, "", {"field", "atoms_um", "thermal", "detection", "rabi_khz", "shapes", "default_shape",
                         "dead_time_us", "seed", "workers"});

    RunConfig cfg = std::move(base);
    if (doc.contains("field")) {
        const json &f = doc.at("field");
        check_keys(f, "field", {"b0_gauss", "b_grad_gauss_per_cm", "zeeman_coeff_mhz_per_gauss", "axis_offset_y_um",
                                "axis_offset_z_um"});
        cfg.field.b0_gauss = number(f, "b0_gauss", "field.", cfg.field.b0_gauss);
        if (f.contains("b_grad_gauss_per_cm")) {
            cfg.field.b_grad_gauss_per_um = number(f, "b_grad_gauss_per_cm", "field.", 0.0) * kGaussPerCmToGaussPerUm;
        }
        if (f.contains("zeeman_coeff_mhz_per_gauss")) {
            cfg.field.zeeman_khz_per_gauss = number(f, "zeeman_coeff_mhz_per_gauss", "field.", 0.0) * 1.0e3;
        }
        cfg.field.axis_offset_y_um = number(f, "axis_offset_y_um", "field.", cfg.field.axis_offset_y_um);
        cfg.field.axis_offset_z_um = number(f, "axis_offset_z_um", "field.", cfg.field.axis_offset_z_um);
    }
    if (doc.contains("atoms_um")) {
        const json &a = doc.at("atoms_um");
        if (!a.is_array()) throw ConfigError("config: 'atoms_um' must be an array of numbers");
        cfg.atom_positions_um.clear();
        for (const auto &x : a) {
            if (!x.is_number()) throw ConfigError("config: 'atoms_um' must be an array of numbers");
            cfg.atom_positions_um.push_back(x.get<double>());
        }
    }
    if (doc.contains("thermal")) {
        const json &t = doc.at("thermal");
        check_keys(t, "thermal", {"temperature_uk", "radial_freq_khz", "trials", "seed", "atom_mass_kg"});
        cfg.thermal.temperature_uk = number(t, "temperature_uk", "thermal.", cfg.thermal.temperature_uk);
        cfg.thermal.radial_freq_khz = number(t, "radial_freq_khz", "thermal.", cfg.thermal.radial_freq_khz);
        cfg.thermal.atom_mass_kg = number(t, "atom_mass_kg", "thermal.", cfg.thermal.atom_mass_kg);
        cfg.thermal.trials = count(t, "trials", "thermal.", cfg.thermal.trials);
        cfg.thermal.seed = count(t, "seed", "thermal.", cfg.thermal.seed);
    }
    if (doc.contains("detection")) {
        const json &d = doc.at("detection");
        check_keys(d, "detection", {"eps_0_as_1", "eps_1_as_0", "pump_fidelity"});
        cfg.detection.eps_0_as_1 = number(d, "eps_0_as_1", "detection.", cfg.detection.eps_0_as_1);
        cfg.detection.eps_1_as_0 = number(d, "eps_1_as_0", "detection.", cfg.detection.eps_1_as_0);
        cfg.pump_fidelity = number(d, "pump_fidelity", "detection.", cfg.pump_fidelity);
    }
    cfg.rabi_khz = number(doc, "rabi_khz", "", cfg.rabi_khz);
    if (doc.contains("shapes")) {
        const json &s = doc.at("shapes");
        if (!s.is_object()) throw ConfigError("config: 'shapes' must be an object");
        for (const auto &item : s.items()) {
            ShapeDef def = parse_shape(item.key(), item.value());
            auto it = std::find_if(cfg.shapes.begin(), cfg.shapes.end(),
                                   [&](const ShapeDef &d) { return d.name == def.name; });
            if (it != cfg.shapes.end()) {
                *it = std::move(def);
            } else {
                cfg.shapes.push_back(std::move(def));
            }
        }
    }
    if (doc.contains("default_shape")) {
        if (!doc.at("default_shape").is_string()) throw ConfigError("config: 'default_shape' must be a string");
        cfg.default_shape = doc.at("default_shape").get<std::string>();
    }
    cfg.dead_time_us = number(doc, "dead_time_us", "", cfg.dead_time_us);
    cfg.seed = count(doc, "seed", "", cfg.seed);
    cfg.workers = static_cast<unsigned>(count(doc, "workers", "", cfg.workers));

    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str(), std::move(base));
}

}  // namespace nareg
