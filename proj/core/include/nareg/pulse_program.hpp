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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nareg/bloch.hpp"
#include "nareg/errors.hpp"
#include "nareg/field_map.hpp"

// Pulse-program language.
//
// One statement per line, `#` starts a comment, keywords are case-insensitive
// and every physical quantity carries a unit suffix:
//
//     DEFINE g70 GAUSSIAN 35.35us TRUNC 4
//     DEFINE sq SQUARE 15.625us
//     INIT
//     PI ATOM 2 SHAPE g70
//     PI2 ATOM 3 PHASE 90deg
//     ROT ATOM 1 ANGLE 0.25pi SHAPE sq OFFSET 1.5um DETUNE 0.2khz
//     WAIT 10us
//     MEASURE
//
// Units: time us|ms|ns, angle rad|deg|pi, length um|nm|mm, frequency
// khz|hz|mhz. Pulses without SHAPE use the caller's default shape.

namespace nareg {

struct ShapeDef {
    std::string name;
    PulseKind kind = PulseKind::square;
    /// Square: length. Gaussian: sigma.
    double duration_us = 1.0;
    double truncation = 4.0;

    friend bool operator==(const ShapeDef &, const ShapeDef &) = default;
};

struct PulseTarget {
    AtomLabel atom = 1;
    double phase_rad = 0.0;
    /// Carrier aimed this far from the atom along the axis.
    double offset_um = 0.0;
    /// Extra carrier detuning on top of the atom's resonance.
    double detune_khz = 0.0;
    std::optional<std::string> shape;

    friend bool operator==(const PulseTarget &, const PulseTarget &) = default;
};

struct InitStmt {
    friend bool operator==(const InitStmt &, const InitStmt &) = default;
};
struct RotStmt {
    PulseTarget pulse;
    double angle_rad = 0.0;
    friend bool operator==(const RotStmt &, const RotStmt &) = default;
};
struct PiStmt {
    PulseTarget pulse;
    friend bool operator==(const PiStmt &, const PiStmt &) = default;
};
struct Pi2Stmt {
    PulseTarget pulse;
    friend bool operator==(const Pi2Stmt &, const Pi2Stmt &) = default;
};
struct WaitStmt {
    double duration_us = 0.0;
    friend bool operator==(const WaitStmt &, const WaitStmt &) = default;
};
struct MeasureStmt {
    friend bool operator==(const MeasureStmt &, const MeasureStmt &) = default;
};

using Statement = std::variant<InitStmt, RotStmt, PiStmt, Pi2Stmt, WaitStmt, MeasureStmt>;

struct Program {
    /// Named shapes from DEFINE lines, in declaration order.
    std::vector<ShapeDef> shapes;
    std::vector<Statement> statements;
    /// Source position of each statement; not part of equality.
    std::vector<SourceLocation> locations;

    const ShapeDef *find_shape(std::string_view name) const;

    friend bool operator==(const Program &a, const Program &b) {
        return a.shapes == b.shapes && a.statements == b.statements;
    }
};

struct ParseOptions {
    /// When set, ATOM labels outside 1..atom_count are rejected.
    std::optional<std::size_t> atom_count;
};

/// Throws ParseError with the offending line/column and, for syntax errors,
/// the tokens that would have been accepted.
Program parse_program(std::string_view source, const ParseOptions &options = {});

/// Rejects ATOM labels outside 1..atom_count, reporting the statement position.
void check_labels(const Program &program, std::size_t atom_count);

/// Canonical text form: DEFINE lines first, then one statement per line with
/// quantities in us/rad/um/khz at full precision. Re-parses to an equal Program.
std::string pretty_print(const Program &program);

}  // namespace nareg
