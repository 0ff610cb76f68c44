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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rtpol/stats.hpp"

using namespace rtpol::stats;

TEST_CASE("average ranks share ties") {
    const std::vector<double> v = {3.0, 1.0, 3.0, 2.0};
    CHECK(average_ranks(v) == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}

TEST_CASE("spearman") {
    const std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 4, 8, 16, 32}, z = {5, 4, 3, 2, 1};
    CHECK(spearman(x, y) == doctest::Approx(1.0));
    CHECK(spearman(x, z) == doctest::Approx(-1.0));
    const std::vector<double> a = {1, 2, 3, 4}, b = {1, 3, 2, 4};
    CHECK(spearman(a, b) == doctest::Approx(0.8));
    const std::vector<double> one = {1};
    CHECK_THROWS_AS(spearman(one, one), std::invalid_argument);
    CHECK_THROWS_AS(spearman(a, x), std::invalid_argument);
}

TEST_CASE("rank sum test") {
    const std::vector<double> small = {1, 2, 3, 4, 5, 6, 7, 8}, large = {9, 10, 11, 12, 13, 14, 15, 16};
    const auto r = mann_whitney_greater(large, small);
    CHECK(r.u == 64.0);
    CHECK(r.p_value < 0.001);
    CHECK(mann_whitney_greater(small, large).p_value > 0.99);
    const auto same = mann_whitney_greater(small, small);
    CHECK(same.p_value == doctest::Approx(0.5));
}
