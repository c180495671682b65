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

#include "nareg/csv.hpp"

#include "nareg/errors.hpp"
#include "nareg/format.hpp"

namespace nareg {

void CsvWriter::comment(std::string_view key, std::string_view value) {
    if (header_written_) throw ConfigError("csv: parameter comments must precede the header row");
    out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::comment(std::string_view key, double value) { comment(key, format_double(value)); }

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    if (header_written_) throw ConfigError("csv: header row already written");
    bool first = true;
    for (auto c : columns) {
        if (!first) out_ << ',';
        out_ << c;
        first = false;
    }
    out_ << '\n';
    columns_ = columns.size();
    header_written_ = true;
}

void CsvWriter::row(std::span<const double> values) {
    if (!header_written_) throw ConfigError("csv: header row missing");
    if (values.size() != columns_) throw ConfigError("csv: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

}  // namespace nareg
