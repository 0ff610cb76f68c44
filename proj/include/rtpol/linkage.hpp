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

#include <cstddef>
#include <vector>

namespace rtpol {

// Symmetric distance matrix stored in condensed (upper triangle) form.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n, double fill = 0.0);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double d);

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::size_t n_;
    std::vector<double> d_;
};

// Agglomerative clustering result in the usual linkage-matrix layout: ids
// below n are leaves, id n + k is the cluster created by merges[k]. Merges
// are sorted by distance.
struct Dendrogram {
    struct Merge {
        std::size_t left;
        std::size_t right;
        double distance;
        std::size_t size;
    };

    std::size_t n_leaves = 0;
    std::vector<Merge> merges;

    // Left-to-right leaf order of the tree as built.
    std::vector<std::size_t> leaf_order() const;
    // Flat labels 0..k-1 obtained by undoing the last k-1 merges; labels are
    // numbered by first appearance in leaf index order.
    std::vector<int> cut(std::size_t k) const;
};

// Average linkage (UPGMA) via the nearest-neighbor chain algorithm, O(n^2).
Dendrogram average_linkage(const DistanceMatrix& d);

// Leaf order consistent with the dendrogram that minimizes the summed
// distance between adjacent leaves (Bar-Joseph et al. dynamic program).
// Among optimal orders the one starting with the smallest leaf index wins.
std::vector<std::size_t> optimal_leaf_order(const Dendrogram& tree, const DistanceMatrix& d);

// Sum of distances between consecutive leaves of an order.
double adjacent_cost(const std::vector<std::size_t>& order, const DistanceMatrix& d);

}  // namespace rtpol
