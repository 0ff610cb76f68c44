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

#include <span>
#include <vector>

namespace rtpol::stats {

// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average ranks. Throws std::invalid_argument for
// fewer than two points or mismatched lengths.
double spearman(std::span<const double> x, std::span<const double> y);

struct RankSumResult {
    double u = 0.0;        // Mann-Whitney U of the first sample
    double z = 0.0;        // normal approximation with tie correction
    double p_value = 1.0;  // one-sided, alternative: first sample tends larger
};

RankSumResult mann_whitney_greater(std::span<const double> x, std::span<const double> y);

}  // namespace rtpol::stats
