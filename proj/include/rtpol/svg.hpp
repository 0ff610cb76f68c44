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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtpol/layout.hpp"

// Small dependency-free SVG writers for the report stage.
namespace rtpol::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Diverging blue-white-red heatmap over [vmin, vmax]; empty cells are grey.
// Labels are drawn only when there are few enough rows or columns to read.
void heatmap(const std::filesystem::path& path, const std::string& title, const std::vector<std::string>& row_labels,
             const std::vector<std::string>& col_labels, std::span<const std::optional<double>> values, double vmin,
             double vmax);

// Two-color scatter plot; labels < 0 and >= 0 get different colors.
void scatter(const std::filesystem::path& path, const std::string& title, std::span<const Point> points,
             std::span<const int> labels);

// Line plot of several series. Log axes drop non-positive points.
void lines(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
           bool log_x, bool log_y, bool steps = false);

}  // namespace rtpol::svg
