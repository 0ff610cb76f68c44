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

#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtpol/similarity.hpp"

using namespace rtpol;

namespace {

std::vector<int> random_labels(std::size_t n, int k, std::mt19937_64& rng) {
    std::vector<int> out(n);
    for (auto& x : out) x = static_cast<int>(rng() % static_cast<unsigned>(k));
    return out;
}

// Exact permutation mean of a statistic of (a, shuffled b).
template <class F>
double permutation_mean(const std::vector<int>& a, const std::vector<int>& b, F stat) {
    std::vector<int> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> s(b.size());
    double total = 0.0, count = 0.0;
    do {
        for (std::size_t k = 0; k < perm.size(); ++k) s[k] = b[static_cast<std::size_t>(perm[k])];
        total += stat(contingency(a, s));
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / count;
}

}  // namespace

TEST_CASE("contingency of six users by hand") {
    const std::vector<int> a = {0, 0, 0, 1, 1, 1};
    const std::vector<int> b = {5, 5, 7, 7, 7, 9};
    const auto t = contingency(a, b);
    REQUIRE(t.cells.size() == 2);
    REQUIRE(t.cells[0].size() == 3);
    CHECK(t.cells[0] == std::vector<std::int64_t>{2, 1, 0});
    CHECK(t.cells[1] == std::vector<std::int64_t>{0, 2, 1});
    CHECK(t.rows == std::vector<std::int64_t>{3, 3});
    CHECK(t.cols == std::vector<std::int64_t>{2, 3, 1});
    CHECK(t.n == 6);
    CHECK_THROWS_AS(contingency(a, std::vector<int>{1, 2}), std::invalid_argument);
}

TEST_CASE("contingency of cluster vectors uses shared users") {
    ClusterVector x, y;
    x.values = {{"a", 1}, {"b", -1}, {"c", 1}};
    y.values = {{"b", 1}, {"c", 1}, {"d", -1}};
    const auto t = contingency(x, y);
    REQUIRE(t.has_value());
    CHECK(t->n == 2);
    ClusterVector z;
    z.values = {{"q", 1}};
    CHECK_FALSE(contingency(x, z).has_value());
}

TEST_CASE("entropy values") {
    CHECK(entropy(std::vector<std::int64_t>{5}) == 0.0);
    CHECK(entropy(std::vector<std::int64_t>{2, 2}) == doctest::Approx(std::log(2.0)));
    CHECK(entropy(std::vector<std::int64_t>{3, 1}) == doctest::Approx(0.5623).epsilon(1e-4));
    CHECK(entropy(std::vector<std::int64_t>{3, 0, 1}) == doctest::Approx(entropy(std::vector<std::int64_t>{3, 1})));
}

TEST_CASE("NMI on a hand table") {
    const std::vector<int> a = {0, 0, 0, 1, 1, 1};
    const std::vector<int> b = {0, 0, 1, 1, 1, 1};
    const auto t = contingency(a, b);
    // cells {{2,1},{0,3}}
    const double mi = (2.0 / 6) * std::log((2.0 / 6) / (0.5 * 2.0 / 6)) + (1.0 / 6) * std::log((1.0 / 6) / (0.5 * 4.0 / 6)) +
                      (3.0 / 6) * std::log((3.0 / 6) / (0.5 * 4.0 / 6));
    const double h1 = std::log(2.0), h2 = -(1.0 / 3) * std::log(1.0 / 3) - (2.0 / 3) * std::log(2.0 / 3);
    CHECK(mutual_information(t) == doctest::Approx(mi).epsilon(1e-12));
    CHECK(nmi(t) == doctest::Approx(2 * mi / (h1 + h2)).epsilon(1e-12));
}

TEST_CASE("rand index by pair enumeration") {
    const std::vector<int> ab_cd = {0, 0, 1, 1}, ac_bd = {0, 1, 0, 1}, one = {0, 0, 0, 0};
    CHECK(rand_index(contingency(ab_cd, ac_bd)) == doctest::Approx(1.0 / 3));
    CHECK(rand_index(contingency(one, ab_cd)) == doctest::Approx(1.0 / 3));
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_labels(15, 3, rng), b = random_labels(15, 4, rng);
        CHECK(rand_index(contingency(a, b)) == doctest::Approx(oracle::rand_index(a, b)).epsilon(1e-12));
    }
    const std::vector<int> single = {1};
    CHECK_THROWS_AS(rand_index(contingency(single, single)), std::invalid_argument);
}

TEST_CASE("ARI closed form equals the exhaustive permutation adjustment") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 5;
        const auto a = random_labels(n, 1 + static_cast<int>(rng() % 3), rng);
        const auto b = random_labels(n, 1 + static_cast<int>(rng() % 3), rng);
        CHECK(adjusted_rand_index(contingency(a, b)) ==
              doctest::Approx(oracle::ari_by_permutation(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("expected mutual information equals the permutation mean") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng() % 5;
        const auto a = random_labels(n, 2 + static_cast<int>(rng() % 2), rng);
        const auto b = random_labels(n, 2, rng);
        const double exact = permutation_mean(a, b, [](const ContingencyTable& t) { return mutual_information(t); });
        CHECK(expected_mutual_information(contingency(a, b)) == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("expected mutual information at larger n by sampling") {
    std::mt19937_64 rng(23);
    const auto a = random_labels(60, 2, rng), b = random_labels(60, 3, rng);
    double total = 0.0;
    const int draws = 20000;
    auto s = b;
    for (int k = 0; k < draws; ++k) {
        std::shuffle(s.begin(), s.end(), rng);
        total += mutual_information(contingency(a, s));
    }
    const double emi = expected_mutual_information(contingency(a, b));
    CHECK(std::abs(total / draws - emi) < 0.02 * emi + 1e-4);
}

TEST_CASE("mutual information never exceeds either entropy") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 60;
        const auto a = random_labels(n, 1 + static_cast<int>(rng() % 4), rng);
        const auto b = random_labels(n, 1 + static_cast<int>(rng() % 4), rng);
        const auto t = contingency(a, b);
        const double mi = mutual_information(t);
        CHECK(mi >= 0.0);
        CHECK(mi <= std::min(entropy(t.rows), entropy(t.cols)) + 1e-12);
        const double v = nmi(t);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("identical partitions score one") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_labels(2 + rng() % 30, 1 + static_cast<int>(rng() % 3), rng);
        auto relabelled = a;
        for (auto& x : relabelled) x = 10 - x;
        const auto s = similarity(contingency(a, relabelled));
        CHECK(s.nmi == doctest::Approx(1.0));
        CHECK(s.anmi == doctest::Approx(1.0));
        CHECK(s.ari == doctest::Approx(1.0));
        CHECK(s.rand == doctest::Approx(1.0));
    }
}

TEST_CASE("random relabelling averages to zero ARI") {
    std::mt19937_64 rng(26);
    const auto a = random_labels(200, 2, rng);
    double total = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto b = random_labels(200, 2, rng);
        total += adjusted_rand_index(contingency(a, b));
    }
    CHECK(std::abs(total / 1000) < 0.01);
}

TEST_CASE("independent large partitions have small NMI") {
    std::mt19937_64 rng(27);
    const auto a = random_labels(10000, 2, rng), b = random_labels(10000, 2, rng);
    CHECK(std::abs(nmi(contingency(a, b))) < 0.05);
}

TEST_CASE("degenerate adjustment") {
    CHECK(adjusted(0.0, 0.0, 0.0, true) == 1.0);
    CHECK(adjusted(0.0, 0.0, 0.0, false) == 0.0);
    CHECK(adjusted(0.5, 0.0, 1.0, false) == 0.5);
}

TEST_CASE("topic pair similarity") {
    auto vec = [](std::string id, std::string topic, std::vector<int> v) {
        ClusterVector c;
        c.trend_id = std::move(id);
        c.topic = std::move(topic);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0) c.values["u" + std::to_string(i)] = v[i];
        }
        return c;
    };
    const std::vector<ClusterVector> vs = {
        vec("a1", "A", {1, 1, -1, -1}),  vec("a2", "A", {-1, -1, 1, 1}), vec("b1", "B", {1, -1, 1, -1}),
        vec("b2", "B", {0, 0, 0, 1}),    vec("b3", "B", {}),
    };
    const auto aa = topic_pair_similarity(vs, "A", "A");
    CHECK(aa.n_pairs == 1);
    CHECK(*aa.mean_ari == doctest::Approx(1.0));
    const auto ab = topic_pair_similarity(vs, "A", "B");
    CHECK(ab.n_pairs == 2);  // b2 shares one user only, b3 is empty
    const auto t = contingency(vs[0], vs[2]);
    CHECK(*ab.mean_ari == doctest::Approx(adjusted_rand_index(*t)));
    CHECK(*ab.mean_anmi == doctest::Approx(adjusted_nmi(*t)));
    const auto none = topic_pair_similarity(vs, "A", "Z");
    CHECK(none.n_pairs == 0);
    CHECK_FALSE(none.mean_ari.has_value());
}
