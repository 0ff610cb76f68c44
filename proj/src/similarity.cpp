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

#include "rtpol/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtpol {

namespace {

double choose2(std::int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

double lnfact(std::int64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); }

// every nonzero cell is alone in its row and column
bool is_matching(const ContingencyTable& t) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.cols.size(); ++j) {
            const auto c = t.cells[i][j];
            if (c != 0 && (c != t.rows[i] || c != t.cols[j])) return false;
        }
    }
    return true;
}

ContingencyTable from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    std::map<int, std::size_t> ra, rb;
    for (const auto& [x, y] : pairs) {
        ra.emplace(x, 0);
        rb.emplace(y, 0);
    }
    std::size_t k = 0;
    for (auto& [_, idx] : ra) idx = k++;
    k = 0;
    for (auto& [_, idx] : rb) idx = k++;
    ContingencyTable t;
    t.cells.assign(ra.size(), std::vector<std::int64_t>(rb.size(), 0));
    t.rows.assign(ra.size(), 0);
    t.cols.assign(rb.size(), 0);
    for (const auto& [x, y] : pairs) {
        const auto i = ra[x], j = rb[y];
        ++t.cells[i][j];
        ++t.rows[i];
        ++t.cols[j];
    }
    t.n = static_cast<std::int64_t>(pairs.size());
    return t;
}

}  // namespace

ContingencyTable contingency(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("contingency: label sequences differ in length");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) pairs.emplace_back(a[i], b[i]);
    return from_pairs(pairs);
}

std::optional<ContingencyTable> contingency(const ClusterVector& a, const ClusterVector& b) {
    std::vector<std::pair<int, int>> pairs;
    auto ia = a.values.begin();
    auto ib = b.values.begin();
    while (ia != a.values.end() && ib != b.values.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            if (ia->second != 0 && ib->second != 0) pairs.emplace_back(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    if (pairs.empty()) return std::nullopt;
    return from_pairs(pairs);
}

double entropy(std::span<const std::int64_t> marginal) {
    std::int64_t n = 0;
    for (auto c : marginal) n += c;
    if (n == 0) return 0.0;
    double h = 0.0;
    for (auto c : marginal) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log(p);
    }
    return h;
}

double mutual_information(const ContingencyTable& t) {
    if (t.n == 0) return 0.0;
    const double n = static_cast<double>(t.n);
    double mi = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.cols.size(); ++j) {
            const auto c = t.cells[i][j];
            if (c == 0) continue;
            const double pij = static_cast<double>(c) / n;
            mi += pij * std::log(n * static_cast<double>(c) / (static_cast<double>(t.rows[i]) * t.cols[j]));
        }
    }
    return std::max(mi, 0.0);
}

double nmi(const ContingencyTable& t) {
    const double h = entropy(t.rows) + entropy(t.cols);
    if (h == 0.0) return 1.0;
    return std::clamp(2.0 * mutual_information(t) / h, 0.0, 1.0);
}

double rand_index(const ContingencyTable& t) {
    if (t.n < 2) throw std::invalid_argument("rand_index: need at least two users");
    double same_both = 0.0, same_a = 0.0, same_b = 0.0;
    for (const auto& row : t.cells) {
        for (auto c : row) same_both += choose2(c);
    }
    for (auto c : t.rows) same_a += choose2(c);
    for (auto c : t.cols) same_b += choose2(c);
    const double pairs = choose2(t.n);
    const double n11 = same_both;
    const double n00 = pairs - same_a - same_b + same_both;
    return (n11 + n00) / pairs;
}

double adjusted(double score, double expected, double max, bool identical) {
    const double denom = max - expected;
    if (std::abs(denom) <= 1e-15 * std::max(1.0, std::abs(max))) return identical ? 1.0 : 0.0;
    return (score - expected) / denom;
}

double adjusted_rand_index(const ContingencyTable& t) {
    if (t.n < 2) throw std::invalid_argument("adjusted_rand_index: need at least two users");
    double index = 0.0, sa = 0.0, sb = 0.0;
    for (const auto& row : t.cells) {
        for (auto c : row) index += choose2(c);
    }
    for (auto c : t.rows) sa += choose2(c);
    for (auto c : t.cols) sb += choose2(c);
    const double expected = sa * sb / choose2(t.n);
    return adjusted(index, expected, 0.5 * (sa + sb), is_matching(t));
}

double expected_mutual_information(const ContingencyTable& t) {
    const std::int64_t n = t.n;
    if (n == 0) return 0.0;
    const double nd = static_cast<double>(n);
    const double ln_n_fact = lnfact(n);
    double emi = 0.0;
    for (auto a : t.rows) {
        for (auto b : t.cols) {
            const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
            const std::int64_t hi = std::min(a, b);
            const double fixed = lnfact(a) + lnfact(b) + lnfact(n - a) + lnfact(n - b) - ln_n_fact;
            for (std::int64_t k = lo; k <= hi; ++k) {
                const double kd = static_cast<double>(k);
                const double term = kd / nd * std::log(nd * kd / (static_cast<double>(a) * static_cast<double>(b)));
                const double ln_p = fixed - lnfact(k) - lnfact(a - k) - lnfact(b - k) - lnfact(n - a - b + k);
                emi += term * std::exp(ln_p);
            }
        }
    }
    return emi;
}

double adjusted_nmi(const ContingencyTable& t) {
    const double mean_h = 0.5 * (entropy(t.rows) + entropy(t.cols));
    return adjusted(mutual_information(t), expected_mutual_information(t), mean_h, is_matching(t));
}

SimilarityScores similarity(const ContingencyTable& t) {
    SimilarityScores s;
    s.n_overlap = t.n;
    s.nmi = nmi(t);
    s.anmi = adjusted_nmi(t);
    if (t.n >= 2) {
        s.rand = rand_index(t);
        s.ari = adjusted_rand_index(t);
    } else {
        s.rand = 1.0;
        s.ari = 1.0;
    }
    return s;
}

TopicPairSimilarity topic_pair_similarity(std::span<const ClusterVector> vectors, const std::string& t1,
                                          const std::string& t2) {
    std::vector<const ClusterVector*> a, b;
    for (const auto& v : vectors) {
        if (v.values.empty()) continue;
        if (v.topic == t1) a.push_back(&v);
        if (v.topic == t2) b.push_back(&v);
    }
    TopicPairSimilarity out;
    double anmi = 0.0, ari = 0.0;
    for (const auto* x : a) {
        for (const auto* y : b) {
            if (x == y) continue;
            // an unordered pair within one topic is counted once
            if (t1 == t2 && x->trend_id > y->trend_id) continue;
            auto table = contingency(*x, *y);
            if (!table || table->n < 2) continue;
            anmi += adjusted_nmi(*table);
            ari += adjusted_rand_index(*table);
            ++out.n_pairs;
        }
    }
    if (out.n_pairs > 0) {
        out.mean_anmi = anmi / static_cast<double>(out.n_pairs);
        out.mean_ari = ari / static_cast<double>(out.n_pairs);
    }
    return out;
}

}  // namespace rtpol
