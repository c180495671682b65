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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nareg/bloch.hpp"
#include "nareg/config.hpp"
#include "nareg/csv.hpp"
#include "nareg/dephasing.hpp"
#include "nareg/errors.hpp"
#include "nareg/field_map.hpp"
#include "nareg/format.hpp"
#include "nareg/pulse_program.hpp"
#include "nareg/rabi_fit.hpp"
#include "nareg/register.hpp"
#include "nareg/schedule.hpp"

namespace nareg::cli {

namespace {

struct GlobalOptions {
    std::string config_path;
    bool paper_defaults = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> workers;
    std::string out_path;
};

struct SpectrumOptions {
    std::string preset = "c";
    std::optional<double> sigma_us;
    std::string kind = "gaussian";
    double range_um = 15.0;
    std::size_t points = 41;
};

struct RabiOptions {
    double max_time_us = 100.0;
    std::size_t points = 201;
    std::optional<double> rabi_khz;
    double detuning_khz = 0.0;
};

struct EchoCmdOptions {
    std::vector<double> times_us;
    std::optional<double> pulse_us;
};

struct RunOptions {
    std::string program_path;
    std::uint64_t shots = 100;
};

// 2 sigma_tau = 17.7, 35.4, 70.7 us
const std::map<std::string, double> kSpectrumPresets{{"a", 8.85}, {"b", 17.7}, {"c", 35.35}};

RunConfig resolve_config(const GlobalOptions &g) {
    RunConfig cfg = RunConfig::paper_defaults();
    if (!g.config_path.empty()) cfg = load_run_config(g.config_path);
    if (g.seed) {
        cfg.seed = *g.seed;
        cfg.thermal.seed = *g.seed;
    }
    if (g.trials) cfg.thermal.trials = *g.trials;
    if (g.workers) cfg.workers = *g.workers;
    cfg.validate();
    return cfg;
}

void echo_config(CsvWriter &csv, const RunConfig &cfg) {
    for (const auto &[key, value] : cfg.describe()) csv.comment(key, value);
}

int cmd_calibrate(const RunConfig &cfg, std::ostream &out) {
    auto line = [&out](const std::string &key, double value) { out << key << " = " << format_double(value) << '\n'; };
    line("nu0_mhz", offset_shift_mhz(cfg.field));
    line("axial_slope_khz_per_um", axial_slope_khz_per_um(cfg.field));
    line("radial_curvature_gauss_per_um2", radial_curvature_gauss_per_um2(cfg.field));
    line("radial_coeff_hz_per_um2", radial_detuning_hz(cfg.field, 1.0, 0.0));
    line("rabi_khz", cfg.rabi_khz);
    line("square_pi_time_us", 1.0e3 / (2.0 * cfg.rabi_khz));
    line("square_pi2_time_us", 1.0e3 / (4.0 * cfg.rabi_khz));
    for (const auto &s : cfg.shapes) {
        const PulseShape pi = calibrate_pi_pulse(s.kind, s.duration_us, s.truncation);
        out << "shape." << s.name << " = " << to_string(s.kind) << " duration_us=" << format_double(s.duration_us)
            << " window_us=" << format_double(pi.window_us()) << " pi_peak_rabi_khz=" << format_double(pi.peak_rabi_khz)
            << '\n';
    }
    line("thermal_position_std_um", position_std_um(cfg.thermal));
    line("thermal_velocity_std_um_per_us", velocity_std_um_per_us(cfg.thermal));
    return kSuccess;
}

int cmd_spectrum(const RunConfig &cfg, const SpectrumOptions &opt, std::ostream &out) {
    const PulseKind kind = pulse_kind_from_string(opt.kind);
    double duration = 0.0;
    std::string label;
    if (opt.sigma_us) {
        duration = *opt.sigma_us;
        label = "custom";
    } else {
        const auto it = kSpectrumPresets.find(opt.preset);
        if (it == kSpectrumPresets.end()) throw ConfigError("spectrum: unknown preset '" + opt.preset + "' (a, b, c)");
        duration = it->second;
        label = opt.preset;
    }
    if (opt.points == 0) throw ConfigError("spectrum: need at least one point");
    if (!(opt.range_um >= 0)) throw ConfigError("spectrum: range must be >= 0");

    const PulseShape shape = calibrate_pi_pulse(kind, duration);
    std::vector<double> offsets(opt.points);
    for (std::size_t i = 0; i < opt.points; ++i) {
        offsets[i] = opt.points == 1 ? 0.0
                                     : -opt.range_um + 2.0 * opt.range_um * static_cast<double>(i) /
                                                           static_cast<double>(opt.points - 1);
    }
    const auto spectrum = transfer_spectrum(shape, offsets, cfg.field, cfg.workers);

    CsvWriter csv(out);
    csv.comment("command", "spectrum");
    csv.comment("preset", label);
    csv.comment("envelope", to_string(kind));
    csv.comment(kind == PulseKind::gaussian ? "sigma_us" : "length_us", duration);
    csv.comment("window_us", shape.window_us());
    csv.comment("peak_rabi_khz", shape.peak_rabi_khz);
    echo_config(csv, cfg);
    csv.header({"offset_um", "transfer_probability", "phase_rad"});
    for (const auto &p : spectrum) csv.row({p.offset_um, p.transfer, p.phase_rad});
    return kSuccess;
}

int cmd_rabi(const RunConfig &cfg, const RabiOptions &opt, std::ostream &out) {
    if (opt.points < 2) throw ConfigError("rabi: need at least two points");
    if (!(opt.max_time_us > 0)) throw ConfigError("rabi: max time must be > 0");
    const double rabi = opt.rabi_khz.value_or(cfg.rabi_khz);
    std::vector<double> times(opt.points);
    for (std::size_t i = 0; i < opt.points; ++i) {
        times[i] = opt.max_time_us * static_cast<double>(i) / static_cast<double>(opt.points - 1);
    }
    const auto curve = rabi_curve(rabi, times, opt.detuning_khz, cfg.workers);

    const auto &det = cfg.detection;
    std::vector<double> detected(curve.size());
    std::vector<double> ideal(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        ideal[i] = curve[i].transfer;
        detected[i] = det.eps_0_as_1 + (1.0 - det.eps_0_as_1 - det.eps_1_as_0) * curve[i].transfer;
    }

    CsvWriter csv(out);
    csv.comment("command", "rabi");
    csv.comment("rabi_khz_used", rabi);
    csv.comment("detuning_khz", opt.detuning_khz);
    if (curve.size() >= 4) {
        const SinusoidFit fit_ideal = fit_sinusoid(times, ideal);
        const SinusoidFit fit_detected = fit_sinusoid(times, detected);
        csv.comment("fit_period_us", fit_detected.period);
        csv.comment("fit_contrast_ideal", fit_ideal.contrast);
        csv.comment("fit_contrast_detected", fit_detected.contrast);
    }
    echo_config(csv, cfg);
    csv.header({"time_us", "transfer_probability", "phase_rad", "detected_probability"});
    for (std::size_t i = 0; i < curve.size(); ++i) {
        csv.row({curve[i].time_us, curve[i].transfer, curve[i].phase_rad, detected[i]});
    }
    return kSuccess;
}

int cmd_echo(const RunConfig &cfg, const EchoCmdOptions &opt, std::ostream &out) {
    std::vector<double> times = opt.times_us;
    if (times.empty()) {
        for (int t = 50; t <= 1400; t += 50) times.push_back(t);
    }
    EchoOptions eo;
    eo.workers = cfg.workers;
    std::vector<EchoPoint> points;
    if (opt.pulse_us) {
        points = echo_contrast_pulsed(cfg.thermal, cfg.field, times, PulseShape::square(*opt.pulse_us, 0.0), eo);
    } else {
        points = echo_contrast(cfg.thermal, cfg.field, times, eo);
    }

    CsvWriter csv(out);
    csv.comment("command", "echo");
    csv.comment("pulses", opt.pulse_us ? "square " + format_double(*opt.pulse_us) + " us" : std::string("ideal"));
    csv.comment("position_std_um", position_std_um(cfg.thermal));
    echo_config(csv, cfg);
    csv.header({"echo_time_us", "contrast", "stderr_estimate"});
    for (const auto &p : points) csv.row({p.echo_time_us, p.contrast, p.stderr_estimate});
    return kSuccess;
}

int cmd_run(const RunConfig &cfg, const RunOptions &opt, std::ostream &out, std::ostream &err) {
    std::ifstream in(opt.program_path);
    if (!in) throw ConfigError("run: cannot open program '" + opt.program_path + "'");
    std::ostringstream text;
    text << in.rdbuf();

    const auto geometry = make_geometry(cfg.atom_positions_um);
    Program program;
    try {
        program = parse_program(text.str(), ParseOptions{geometry.size()});
    } catch (const ParseError &e) {
        err << e.diagnostic(opt.program_path) << '\n';
        return kConfigError;
    }

    CompileOptions co;
    co.dead_time_us = cfg.dead_time_us;
    co.shapes = cfg.shapes;
    co.default_shape = cfg.default_shape;
    const Schedule schedule = compile(program, geometry, cfg.field, co);

    ExecuteOptions eo;
    eo.pump_fidelity = cfg.pump_fidelity;
    eo.workers = cfg.workers;
    const RegisterState reg = RegisterState::load(geometry, cfg.seed);
    const ExecutionResult result = execute(schedule, reg, cfg.detection, opt.shots, eo);

    nlohmann::json params = nlohmann::json::object();
    for (const auto &[key, value] : cfg.describe()) params[key] = value;
    nlohmann::json doc{{"program", opt.program_path},
                       {"parameters", std::move(params)},
                       {"schedule", nlohmann::json::parse(schedule_to_json(schedule))},
                       {"result", nlohmann::json::parse(shots_to_json(result))}};
    out << doc.dump(2) << '\n';
    return kSuccess;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Neutral-atom quantum register simulator: gradient addressing, Rabi and spin-echo curves"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    auto *config_opt = app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_flag("--paper-defaults", g.paper_defaults, "Use the reference parameter set (the built-in defaults)")
        ->excludes(config_opt);
    app.add_option("--seed", g.seed, "Seed for register shots and Monte-Carlo trials");
    app.add_option("--trials", g.trials, "Monte-Carlo trials for echo curves");
    app.add_option("--workers", g.workers, "Worker threads (0 = all cores); output does not depend on it");
    app.add_option("--out", g.out_path, "Write data here instead of standard output");

    auto *calibrate = app.add_subcommand("calibrate", "Print derived slope, pi times and curvature coefficients");

    SpectrumOptions so;
    auto *spectrum = app.add_subcommand("spectrum", "Addressing spectrum of a calibrated pi pulse");
    spectrum->add_option("--preset", so.preset, "a: 2sigma=17.7us, b: 35.4us, c: 70.7us")
        ->check(CLI::IsMember({"a", "b", "c"}));
    spectrum->add_option("--sigma-us", so.sigma_us, "Custom sigma (gaussian) or length (square), us");
    spectrum->add_option("--kind", so.kind, "Envelope for --sigma-us")->check(CLI::IsMember({"gaussian", "square"}));
    spectrum->add_option("--range-um", so.range_um, "Sweep offsets over [-range, +range]");
    spectrum->add_option("--points", so.points, "Number of offsets");

    RabiOptions ro;
    auto *rabi = app.add_subcommand("rabi", "Transfer versus square-pulse duration");
    rabi->add_option("--max-time-us", ro.max_time_us, "Longest pulse");
    rabi->add_option("--points", ro.points, "Number of durations, including t = 0");
    rabi->add_option("--rabi-khz", ro.rabi_khz, "Override the configured Rabi frequency");
    rabi->add_option("--detuning-khz", ro.detuning_khz, "Atom-minus-carrier detuning");

    EchoCmdOptions eo;
    auto *echo = app.add_subcommand("echo", "Spin-echo contrast from thermal radial motion");
    echo->add_option("--times", eo.times_us, "Echo times in us (default 50..1400 step 50)")->delimiter(',');
    echo->add_option("--pulsed-us", eo.pulse_us, "Use finite square pulses of this length instead of ideal ones");

    RunOptions rn;
    auto *run_cmd = app.add_subcommand("run", "Parse, compile and execute a pulse program");
    run_cmd->add_option("program", rn.program_path, "Pulse program file")->required();
    run_cmd->add_option("--shots", rn.shots, "Register shots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream cli_out;
        std::ostringstream cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kSuccess : kConfigError;
    }

    try {
        const RunConfig cfg = resolve_config(g);
        std::ofstream file;
        if (!g.out_path.empty()) {
            file.open(g.out_path);
            if (!file) throw ConfigError("cannot open output file '" + g.out_path + "'");
        }
        std::ostream &data = g.out_path.empty() ? out : file;

        if (calibrate->parsed()) return cmd_calibrate(cfg, data);
        if (spectrum->parsed()) return cmd_spectrum(cfg, so, data);
        if (rabi->parsed()) return cmd_rabi(cfg, ro, data);
        if (echo->parsed()) return cmd_echo(cfg, eo, data);
        if (run_cmd->parsed()) return cmd_run(cfg, rn, data, err);
    } catch (const ConvergenceError &e) {
        err << "nareg: numerical failure: " << e.what() << '\n';
        return kConvergenceError;
    } catch (const ParseError &e) {
        err << e.diagnostic("<input>") << '\n';
        return kConfigError;
    } catch (const Error &e) {
        err << "nareg: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace nareg::cli
