/*
 * Copyright (c) 2026, rtpol contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 style CSV reading and writing. Fields containing commas,
// quotes or newlines are quoted on output; quoted fields are accepted on input.
namespace rtpol::csv {

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;

    // Index of a named column; throws std::runtime_error when absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
};

std::vector<Row> parse_rows(std::istream& in);
Table parse_table(std::istream& in);
Table read_table(const std::filesystem::path& path);

std::string escape(std::string_view field);

// Shortest-ish fixed representation used for every floating point value in
// output artifacts, so re-runs are byte identical.
std::string format_double(double value, int precision = 10);

class Writer {
public:
    explicit Writer(const std::filesystem::path& path);

    void row(const std::vector<std::string>& fields);
    void row(std::initializer_list<std::string_view> fields);

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

}  // namespace rtpol::csv
