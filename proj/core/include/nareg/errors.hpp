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

#include <stdexcept>
#include <string>
#include <vector>

namespace nareg {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, inconsistent inputs, or a request the integrator cannot
/// honour within its step budget.
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// A numerical result failed its post-condition (e.g. a propagator drifted away
/// from unitarity).
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

/// The operation is not defined for this input (e.g. spectator phase of a
/// resonant atom).
class DomainError : public Error {
   public:
    using Error::Error;
};

struct SourceLocation {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourceLocation &, const SourceLocation &) = default;
};

class ParseError : public Error {
   public:
    ParseError(SourceLocation where, std::string message, std::vector<std::string> expected = {});

    const SourceLocation &where() const noexcept { return where_; }
    const std::string &message() const noexcept { return message_; }
    const std::vector<std::string> &expected() const noexcept { return expected_; }

    /// `file:line:col: error: message` as printed by the command-line tool.
    std::string diagnostic(const std::string &filename) const;

   private:
    SourceLocation where_;
    std::string message_;
    std::vector<std::string> expected_;
};

}  // namespace nareg
