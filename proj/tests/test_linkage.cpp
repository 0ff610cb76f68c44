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

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rtpol/linkage.hpp"

using namespace rtpol;

namespace {

DistanceMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DistanceMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, u(rng));
    }
    return d;
}

}  // namespace

TEST_CASE("condensed storage is symmetric") {
    DistanceMatrix d(4);
    d.set(2, 1, 0.5);
    CHECK(d(1, 2) == 0.5);
    CHECK(d(2, 1) == 0.5);
    CHECK(d(3, 3) == 0.0);
}

TEST_CASE("average linkage heights match the naive algorithm") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_matrix(3 + trial % 12, rng);
        const auto tree = average_linkage(d);
        const auto expected = oracle::average_linkage_heights(d);
        REQUIRE(tree.merges.size() == d.size() - 1);
        for (std::size_t k = 0; k < expected.size(); ++k) {
            CHECK(tree.merges[k].distance == doctest::Approx(expected[k]).epsilon(1e-12));
        }
        CHECK(tree.merges.back().size == d.size());
        auto order = tree.leaf_order();
        std::sort(order.begin(), order.end());
        for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);
    }
}

TEST_CASE("cutting a clear two-group tree") {
    DistanceMatrix d(5, 1.0);
    d.set(0, 1, 0.1);
    d.set(0, 2, 0.1);
    d.set(1, 2, 0.1);
    d.set(3, 4, 0.1);
    const auto tree = average_linkage(d);
    CHECK(tree.cut(2) == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(tree.cut(1) == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(tree.cut(5) == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("three topics: the middle one sits between") {
    // tau(A,B)=0.9, tau(B,C)=0.8, tau(A,C)=0.1 as distances (1 - tau) / 2
    DistanceMatrix d(3);
    d.set(0, 1, 0.05);
    d.set(1, 2, 0.1);
    d.set(0, 2, 0.45);
    const auto tree = average_linkage(d);
    const auto order = optimal_leaf_order(tree, d);
    REQUIRE(order.size() == 3);
    CHECK(order[1] == 1);
}

TEST_CASE("optimal leaf order beats every tree-consistent order") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = random_matrix(3 + trial % 5, rng);
        const auto tree = average_linkage(d);
        const auto order = optimal_leaf_order(tree, d);
        double best = INFINITY;
        std::set<std::vector<std::size_t>> allowed;
        for (const auto& o : oracle::tree_orders(tree)) {
            best = std::min(best, adjacent_cost(o, d));
            allowed.insert(o);
        }
        CHECK(allowed.contains(order));
        CHECK(adjacent_cost(order, d) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("block structured six topics keep blocks adjacent") {
    DistanceMatrix d(6, 0.9);
    const std::vector<std::size_t> block = {0, 1, 0, 1, 0, 1};
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            if (block[i] == block[j]) d.set(i, j, 0.05 + 0.01 * static_cast<double>(i + j));
        }
    }
    const auto order = optimal_leaf_order(average_linkage(d), d);
    // within-block topics are contiguous: exactly one block change
    int changes = 0;
    for (std::size_t k = 1; k < order.size(); ++k) changes += block[order[k]] != block[order[k - 1]];
    CHECK(changes == 1);
    // and no permutation at all does better than the tree-consistent optimum here
    std::vector<std::size_t> perm = {0, 1, 2, 3, 4, 5};
    double best = INFINITY;
    do {
        best = std::min(best, adjacent_cost(perm, d));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(adjacent_cost(order, d) == doctest::Approx(best));
}

TEST_CASE("ties pick the order starting with the smallest leaf") {
    DistanceMatrix d(4, 1.0);
    const auto order = optimal_leaf_order(average_linkage(d), d);
    CHECK(order.front() == 0);
}
