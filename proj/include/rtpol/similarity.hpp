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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtpol/alignment.hpp"

namespace rtpol {

// Joint cluster counts of two partitions over their common users.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> cells;  // [row cluster][column cluster]
    std::vector<std::int64_t> rows;                // row marginals
    std::vector<std::int64_t> cols;                // column marginals
    std::int64_t n = 0;
};

// Table from two label sequences of equal length. Labels may be any ints.
ContingencyTable contingency(std::span<const int> a, std::span<const int> b);

// Restricted to users carrying a nonzero value in both vectors; empty when
// they share no user.
std::optional<ContingencyTable> contingency(const ClusterVector& a, const ClusterVector& b);

// Entropy in nats of a marginal; 0 log 0 = 0.
double entropy(std::span<const std::int64_t> marginal);
double mutual_information(const ContingencyTable& t);
double nmi(const ContingencyTable& t);
// Throws std::invalid_argument when n < 2.
double rand_index(const ContingencyTable& t);
double adjusted_rand_index(const ContingencyTable& t);
// Expected mutual information under the permutation model (fixed marginals).
double expected_mutual_information(const ContingencyTable& t);
double adjusted_nmi(const ContingencyTable& t);

// (score - expected) / (max - expected). When max equals expected the result
// is 1 if the partitions coincide and 0 otherwise.
double adjusted(double score, double expected, double max, bool identical);

struct SimilarityScores {
    double nmi = 0.0;
    double anmi = 0.0;
    double rand = 0.0;
    double ari = 0.0;
    std::int64_t n_overlap = 0;
};

SimilarityScores similarity(const ContingencyTable& t);

struct TopicPairSimilarity {
    std::optional<double> mean_anmi;
    std::optional<double> mean_ari;
    std::size_t n_pairs = 0;
};

// Unweighted means over trend pairs (k1 in t1, k2 in t2, k1 != k2) whose
// vectors share at least two users. Vectors without entries are skipped.
TopicPairSimilarity topic_pair_similarity(std::span<const ClusterVector> vectors, const std::string& t1,
                                          const std::string& t2);

}  // namespace rtpol
