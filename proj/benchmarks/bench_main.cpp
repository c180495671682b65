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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/dephasing.hpp"
#include "nareg/field_map.hpp"
#include "nareg/pulse_program.hpp"
#include "nareg/schedule.hpp"

namespace {

using namespace nareg;

void BM_PropagateGaussianPi(benchmark::State &state) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, static_cast<double>(state.range(0)) / 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(g, Detuning::constant(9.1875)));
}
BENCHMARK(BM_PropagateGaussianPi)->Arg(885)->Arg(1770)->Arg(3535)->Unit(benchmark::kMillisecond);

void BM_PropagateSquare(benchmark::State &state) {
    const PulseShape sq = PulseShape::square(15.625, 32.0);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(sq, Detuning::constant(12.0)));
}
BENCHMARK(BM_PropagateSquare)->Unit(benchmark::kMicrosecond);

void BM_Spectrum41(benchmark::State &state) {
    const PulseShape g = calibrate_pi_pulse(PulseKind::gaussian, 35.35);
    std::vector<double> offsets;
    for (int i = 0; i < 41; ++i) offsets.push_back(-15.0 + 0.75 * i);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transfer_spectrum(g, offsets, FieldConfig{}, static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_Spectrum41)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_EchoTrials(benchmark::State &state) {
    ThermalConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    const std::vector<double> times{600.0};
    for (auto _ : state) benchmark::DoNotOptimize(echo_contrast(cfg, FieldConfig{}, times));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EchoTrials)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EchoPulsed(benchmark::State &state) {
    ThermalConfig cfg;
    cfg.trials = 1000;
    const std::vector<double> times{600.0};
    const PulseShape pulse = PulseShape::square(1.0, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(echo_contrast_pulsed(cfg, FieldConfig{}, times, pulse));
}
BENCHMARK(BM_EchoPulsed)->Unit(benchmark::kMillisecond);

const std::string kProgram =
    "DEFINE g70 GAUSSIAN 35.35us TRUNC 4\n"
    "INIT\n"
    "PI ATOM 2 SHAPE g70\n"
    "PI2 ATOM 3 SHAPE g70 PHASE 90deg\n"
    "WAIT 10us\n"
    "PI ATOM 4 SHAPE g70\n"
    "MEASURE\n";

void BM_Parse(benchmark::State &state) {
    for (auto _ : state) benchmark::DoNotOptimize(parse_program(kProgram));
}
BENCHMARK(BM_Parse);

void BM_ParseCompile(benchmark::State &state) {
    const std::vector<double> xs{-40, -20, 0, 20, 40};
    const auto geometry = make_geometry(xs);
    for (auto _ : state) benchmark::DoNotOptimize(compile(parse_program(kProgram), geometry, FieldConfig{}));
}
BENCHMARK(BM_ParseCompile)->Unit(benchmark::kMillisecond);

void BM_ExecuteShots(benchmark::State &state) {
    const std::vector<double> xs{-40, -20, 0, 20, 40};
    const auto geometry = make_geometry(xs);
    const Schedule s = compile(parse_program(kProgram), geometry, FieldConfig{});
    const auto reg = RegisterState::load(geometry, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(execute(s, reg, DetectionModel{}, static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_ExecuteShots)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
