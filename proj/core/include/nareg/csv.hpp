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

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nareg {

/// Plot-ready CSV: `# key = value` parameter lines, one header row, then
/// numeric rows. Every file carries the parameters that produced it.
class CsvWriter {
   public:
    explicit CsvWriter(std::ostream &out) : out_(out) {}

    void comment(std::string_view key, std::string_view value);
    void comment(std::string_view key, double value);
    void header(std::initializer_list<std::string_view> columns);
    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

   private:
    std::ostream &out_;
    std::size_t columns_ = 0;
    bool header_written_ = false;
};

}  // namespace nareg
