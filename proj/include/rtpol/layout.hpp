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

#include <cstdint>
#include <span>
#include <vector>

#include "rtpol/network.hpp"

namespace rtpol {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// 2D positions indexed like TrendNetwork::nodes.
struct Embedding2D {
    std::vector<Point> coordinates;

    std::size_t size() const { return coordinates.size(); }
};

// ForceAtlas2 style parameters. Repulsion is degree-weighted (mass = degree+1),
// attraction is linear in distance and scaled by edge weight, gravity pulls
// towards the origin with strength proportional to mass.
struct LayoutParams {
    int iterations = 1000;
    double gravity = 1.0;
    double scaling = 2.0;
    bool lin_log = false;
    double jitter_tolerance = 1.0;
    // Networks with at least this many nodes use a Barnes-Hut quadtree for
    // repulsion instead of the exact pairwise sum.
    std::size_t barnes_hut_threshold = 4000;
    double barnes_hut_theta = 1.2;
};

// Deterministic for a given (network, params, seed).
Embedding2D force_layout(const TrendNetwork& net, const LayoutParams& params, std::uint64_t seed);

// Silhouette of one point for a partition with exactly two labels. A point
// whose own cluster is a singleton scores 0.
double silhouette_node(std::span<const Point> points, std::span<const int> labels, std::size_t node);

// Mean silhouette over all points. Throws std::invalid_argument unless the
// labels take exactly two distinct values.
double silhouette_score(std::span<const Point> points, std::span<const int> labels);

}  // namespace rtpol
