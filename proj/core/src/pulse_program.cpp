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

#include "nareg/pulse_program.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nareg/format.hpp"

namespace nareg {

ParseError::ParseError(SourceLocation where, std::string message, std::vector<std::string> expected)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string ParseError::diagnostic(const std::string &filename) const {
    std::string out = filename + ":" + std::to_string(where_.line) + ":" + std::to_string(where_.column) +
                      ": error: " + message_;
    if (!expected_.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected_.size(); ++i) {
            if (i) out += i + 1 == expected_.size() ? " or " : ", ";
            out += expected_[i];
        }
        out += ")";
    }
    return out;
}

const ShapeDef *Program::find_shape(std::string_view name) const {
    for (const auto &s : shapes) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

namespace {

struct Token {
    std::string text;
    int column = 1;
};

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

enum class Dimension { time, angle, length, frequency };

struct UnitEntry {
    std::string_view suffix;
    double scale;
};

std::span<const UnitEntry> units_for(Dimension d) {
    static constexpr UnitEntry time[] = {{"us", 1.0}, {"ms", 1.0e3}, {"ns", 1.0e-3}};
    static constexpr UnitEntry angle[] = {{"rad", 1.0}, {"deg", std::numbers::pi / 180.0}, {"pi", std::numbers::pi}};
    static constexpr UnitEntry length[] = {{"um", 1.0}, {"nm", 1.0e-3}, {"mm", 1.0e3}};
    static constexpr UnitEntry frequency[] = {{"khz", 1.0}, {"hz", 1.0e-3}, {"mhz", 1.0e3}};
    switch (d) {
        case Dimension::time:
            return time;
        case Dimension::angle:
            return angle;
        case Dimension::length:
            return length;
        case Dimension::frequency:
            return frequency;
    }
    return {};
}

std::string dimension_name(Dimension d) {
    switch (d) {
        case Dimension::time:
            return "time";
        case Dimension::angle:
            return "angle";
        case Dimension::length:
            return "length";
        case Dimension::frequency:
            return "frequency";
    }
    return "quantity";
}

std::vector<std::string> unit_examples(Dimension d) {
    std::vector<std::string> out;
    for (const auto &u : units_for(d)) out.push_back("<number>" + std::string(u.suffix));
    return out;
}

const std::vector<std::string> kStatementKeywords{"INIT", "DEFINE", "ROT", "PI", "PI2", "WAIT", "MEASURE"};

class LineParser {
   public:
    LineParser(std::vector<Token> tokens, int line, int end_column, const ParseOptions &options)
        : tokens_(std::move(tokens)), line_(line), end_column_(end_column), options_(options) {}

    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token &peek() const { return tokens_[pos_]; }

    SourceLocation here() const { return {line_, at_end() ? end_column_ : tokens_[pos_].column}; }

    [[noreturn]] void fail_unexpected(std::vector<std::string> expected) const {
        if (at_end()) throw ParseError(here(), "unexpected end of line", std::move(expected));
        throw ParseError(here(), "unexpected '" + peek().text + "'", std::move(expected));
    }

    std::string keyword(const std::vector<std::string> &allowed) {
        if (at_end()) fail_unexpected(allowed);
        const std::string kw = upper(peek().text);
        if (std::find(allowed.begin(), allowed.end(), kw) == allowed.end()) fail_unexpected(allowed);
        ++pos_;
        return kw;
    }

    std::string identifier(const std::string &what) {
        if (at_end() || !is_identifier(peek().text)) fail_unexpected({what});
        return tokens_[pos_++].text;
    }

    double quantity(Dimension d) {
        if (at_end()) fail_unexpected(unit_examples(d));
        const Token &tok = peek();
        std::string_view text = tok.text;
        if (!text.empty() && text[0] == '+') text.remove_prefix(1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || !std::isfinite(value)) {
            throw ParseError(here(), "expected a " + dimension_name(d) + " literal, found '" + tok.text + "'",
                             unit_examples(d));
        }
        const std::string suffix = lower(std::string_view(ptr, text.data() + text.size() - ptr));
        for (const auto &u : units_for(d)) {
            if (suffix == u.suffix) {
                ++pos_;
                return value * u.scale;
            }
        }
        const std::string why = suffix.empty() ? "missing unit suffix on '" + tok.text + "'"
                                               : "unit '" + suffix + "' is not a " + dimension_name(d) + " unit";
        throw ParseError(here(), why, unit_examples(d));
    }

    double plain_number() {
        if (at_end()) fail_unexpected({"<number>"});
        const Token &tok = peek();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || !std::isfinite(value)) {
            fail_unexpected({"<number>"});
        }
        ++pos_;
        return value;
    }

    AtomLabel atom_label() {
        if (at_end()) fail_unexpected({"<atom label>"});
        const Token &tok = peek();
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) fail_unexpected({"<atom label>"});
        if (value < 1) throw ParseError(here(), "atom labels start at 1");
        if (options_.atom_count && static_cast<std::size_t>(value) > *options_.atom_count) {
            throw ParseError(here(), "unknown label " + tok.text + " (register has " +
                                         std::to_string(*options_.atom_count) + " atoms)");
        }
        ++pos_;
        return value;
    }

    PulseTarget pulse_clauses(PulseTarget target) {
        std::vector<std::string> remaining{"SHAPE", "PHASE", "OFFSET", "DETUNE"};
        while (!at_end()) {
            const std::string kw = keyword(remaining);
            remaining.erase(std::find(remaining.begin(), remaining.end(), kw));
            if (kw == "SHAPE") {
                target.shape = identifier("<shape name>");
            } else if (kw == "PHASE") {
                target.phase_rad = quantity(Dimension::angle);
            } else if (kw == "OFFSET") {
                target.offset_um = quantity(Dimension::length);
            } else {
                target.detune_khz = quantity(Dimension::frequency);
            }
        }
        return target;
    }

    void expect_end() {
        if (!at_end()) fail_unexpected({"end of line"});
    }

   private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_;
    int end_column_;
    const ParseOptions &options_;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

const PulseTarget &target_of(const Statement &s) {
    if (const auto *r = std::get_if<RotStmt>(&s)) return r->pulse;
    if (const auto *p = std::get_if<PiStmt>(&s)) return p->pulse;
    return std::get<Pi2Stmt>(s).pulse;
}

bool is_pulse(const Statement &s) {
    return std::holds_alternative<RotStmt>(s) || std::holds_alternative<PiStmt>(s) ||
           std::holds_alternative<Pi2Stmt>(s);
}

}  // namespace

Program parse_program(std::string_view source, const ParseOptions &options) {
    Program program;
    bool seen_init = false;
    bool seen_measure = false;
    int line_no = 0;

    std::size_t offset = 0;
    while (offset <= source.size()) {
        const std::size_t nl = source.find('\n', offset);
        std::string_view line = source.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
        offset = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const SourceLocation start{line_no, tokens.front().column};
        LineParser p(std::move(tokens), line_no, static_cast<int>(line.size()) + 1, options);
        const std::string kw = p.keyword(kStatementKeywords);

        if (seen_measure) throw ParseError(start, "statement after MEASURE");

        if (kw == "DEFINE") {
            ShapeDef def;
            const SourceLocation name_at = p.here();
            def.name = p.identifier("<shape name>");
            if (program.find_shape(def.name)) throw ParseError(name_at, "shape '" + def.name + "' already defined");
            def.kind = p.keyword({"SQUARE", "GAUSSIAN"}) == "SQUARE" ? PulseKind::square : PulseKind::gaussian;
            const SourceLocation duration_at = p.here();
            def.duration_us = p.quantity(Dimension::time);
            if (!(def.duration_us > 0)) throw ParseError(duration_at, "pulse duration must be positive");
            if (def.kind == PulseKind::gaussian && !p.at_end()) {
                p.keyword({"TRUNC"});
                const SourceLocation trunc_at = p.here();
                def.truncation = p.plain_number();
                if (!(def.truncation >= 3.0)) throw ParseError(trunc_at, "gaussian truncation must be at least 3");
            }
            p.expect_end();
            program.shapes.push_back(std::move(def));
            continue;
        }

        if (kw == "INIT") {
            if (seen_init) throw ParseError(start, "duplicate INIT");
            p.expect_end();
            seen_init = true;
            program.statements.emplace_back(InitStmt{});
            program.locations.push_back(start);
            continue;
        }
        if (!seen_init) throw ParseError(start, "expected INIT", {"INIT"});

        Statement stmt;
        if (kw == "MEASURE") {
            p.expect_end();
            seen_measure = true;
            stmt = MeasureStmt{};
        } else if (kw == "WAIT") {
            const SourceLocation at = p.here();
            const double d = p.quantity(Dimension::time);
            if (d < 0) throw ParseError(at, "wait duration must be non-negative");
            p.expect_end();
            stmt = WaitStmt{d};
        } else {
            p.keyword({"ATOM"});
            PulseTarget target;
            target.atom = p.atom_label();
            if (kw == "ROT") {
                p.keyword({"ANGLE"});
                const double angle = p.quantity(Dimension::angle);
                stmt = RotStmt{p.pulse_clauses(target), angle};
            } else if (kw == "PI") {
                stmt = PiStmt{p.pulse_clauses(target)};
            } else {
                stmt = Pi2Stmt{p.pulse_clauses(target)};
            }
        }
        program.statements.push_back(std::move(stmt));
        program.locations.push_back(start);
    }

    if (!seen_init) {
        const SourceLocation at{line_no == 0 ? 1 : line_no, 1};
        throw ParseError(at, "expected INIT", {"INIT"});
    }
    return program;
}

void check_labels(const Program &program, std::size_t atom_count) {
    for (std::size_t i = 0; i < program.statements.size(); ++i) {
        const Statement &s = program.statements[i];
        if (!is_pulse(s)) continue;
        const AtomLabel label = target_of(s).atom;
        if (label < 1 || static_cast<std::size_t>(label) > atom_count) {
            const SourceLocation at = i < program.locations.size() ? program.locations[i] : SourceLocation{};
            throw ParseError(at, "unknown label " + std::to_string(label) + " (register has " +
                                     std::to_string(atom_count) + " atoms)");
        }
    }
}

namespace {

void print_target(std::ostringstream &out, const PulseTarget &t) {
    if (t.shape) out << " SHAPE " << *t.shape;
    if (t.phase_rad != 0.0) out << " PHASE " << format_double(t.phase_rad) << "rad";
    if (t.offset_um != 0.0) out << " OFFSET " << format_double(t.offset_um) << "um";
    if (t.detune_khz != 0.0) out << " DETUNE " << format_double(t.detune_khz) << "khz";
}

}  // namespace

std::string pretty_print(const Program &program) {
    std::ostringstream out;
    for (const auto &s : program.shapes) {
        out << "DEFINE " << s.name << ' ' << (s.kind == PulseKind::square ? "SQUARE " : "GAUSSIAN ")
            << format_double(s.duration_us) << "us";
        if (s.kind == PulseKind::gaussian) out << " TRUNC " << format_double(s.truncation);
        out << '\n';
    }
    for (const auto &stmt : program.statements) {
        std::visit(
            [&out](const auto &s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, InitStmt>) {
                    out << "INIT";
                } else if constexpr (std::is_same_v<T, MeasureStmt>) {
                    out << "MEASURE";
                } else if constexpr (std::is_same_v<T, WaitStmt>) {
                    out << "WAIT " << format_double(s.duration_us) << "us";
                } else if constexpr (std::is_same_v<T, RotStmt>) {
                    out << "ROT ATOM " << s.pulse.atom << " ANGLE " << format_double(s.angle_rad) << "rad";
                    print_target(out, s.pulse);
                } else if constexpr (std::is_same_v<T, PiStmt>) {
                    out << "PI ATOM " << s.pulse.atom;
                    print_target(out, s.pulse);
                } else {
                    out << "PI2 ATOM " << s.pulse.atom;
                    print_target(out, s.pulse);
                }
            },
            stmt);
        out << '\n';
    }
    return out.str();
}

}  // namespace nareg
