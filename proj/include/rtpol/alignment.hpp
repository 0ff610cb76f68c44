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

#include "rtpol/linkage.hpp"
#include "rtpol/sbm.hpp"

namespace rtpol {

// Per-trend opinion assignment. Only nonzero entries are stored; any user
// not listed has value 0.
struct ClusterVector {
    std::string trend_id;
    std::string topic;
    std::map<std::string, int> values;  // user -> -1 / +1

    int value(const std::string& user) const;
};

// Block 0 -> -1, block 1 -> +1 for a kept two-block partition (pruned leaves
// already carry their neighbor's value); a one-block verdict gives no entries.
ClusterVector cluster_vector(const PolarizationVerdict& verdict, std::string topic = {});

struct PairAlignment {
    std::optional<double> alpha;  // empty when m == 0
    std::int64_t m = 0;
};

PairAlignment user_alignment(std::span<const ClusterVector> vectors, const std::string& i, const std::string& j);

// Square alignment matrix over a fixed user list. Entries are stored as the
// integer sum of products and the co-participation count.
class AlignmentMatrix {
public:
    AlignmentMatrix() = default;
    explicit AlignmentMatrix(std::vector<std::string> users);

    const std::vector<std::string>& users() const { return users_; }
    std::size_t size() const { return users_.size(); }
    std::optional<std::size_t> index_of(const std::string& user) const;

    std::int64_t support(std::size_t i, std::size_t j) const { return support_[i * size() + j]; }
    std::int64_t sum(std::size_t i, std::size_t j) const { return sum_[i * size() + j]; }
    std::optional<double> alpha(std::size_t i, std::size_t j) const;

    // Adds one trend: every pair of listed users that both carry a value.
    void accumulate(const ClusterVector& vector);

private:
    std::vector<std::string> users_;  // sorted
    std::vector<std::int32_t> sum_;
    std::vector<std::int32_t> support_;
};

// Users are sorted and deduplicated. With `topic` set only vectors of that
// topic contribute.
AlignmentMatrix build_alignment_matrix(std::span<const ClusterVector> vectors, std::span<const std::string> users,
                                       const std::optional<std::string>& topic = std::nullopt);

enum class Camp { l, r };

char to_char(Camp c);
Camp parse_camp(const std::string& text);

struct CampAssignment {
    std::map<std::string, Camp> camp;
    Dendrogram tree;                      // over AlignmentMatrix::users()
    std::vector<std::size_t> leaf_order;  // heatmap ordering of the same users
};

// Average linkage on d = (1 - alpha) / 2 with masked pairs at 0.5, cut into two
// camps. The camp holding the smallest user id is l unless `anchors` (user ->
// camp) vote otherwise by majority. Throws std::invalid_argument for fewer
// than two users or when every off-diagonal entry is masked. The leaf order is
// optimal for up to `max_ordered_users` users and the plain dendrogram order
// above that.
CampAssignment extract_camps(const AlignmentMatrix& matrix, const std::map<std::string, Camp>& anchors = {},
                             std::size_t max_ordered_users = 400);

struct Membership {
    std::optional<double> mu;  // empty when the user shares no trend with any camp member
    double nu_l = 0.0;
    double nu_r = 0.0;
};

// Signed membership from (alpha to camp member, member's camp) terms. A camp
// with no terms contributes nu = 0. `halved` applies the extra factor 1/2 of
// the alternative per-topic normalization.
Membership membership_from_terms(std::span<const std::pair<double, Camp>> terms, bool halved = false);

// Membership of a user of the matrix relative to the camp members; the user
// itself is never part of its own reference set.
Membership membership(const AlignmentMatrix& matrix, const CampAssignment& camps, const std::string& user,
                      bool halved = false);

// Memberships of arbitrary users computed straight from cluster vectors,
// optionally restricted to one topic. Users need not be camp members.
std::map<std::string, Membership> membership_scores(std::span<const ClusterVector> vectors,
                                                    const CampAssignment& camps,
                                                    std::span<const std::string> users,
                                                    const std::optional<std::string>& topic = std::nullopt,
                                                    bool halved = false);

struct IssueAlignment {
    std::optional<double> tau;  // empty when no user has both scores
    std::size_t n = 0;
};

IssueAlignment issue_alignment(const std::map<std::string, Membership>& t1,
                               const std::map<std::string, Membership>& t2);

struct IssueAlignmentMatrix {
    std::vector<std::string> topics;
    std::vector<IssueAlignment> cells;  // row-major topics x topics
    std::vector<std::size_t> leaf_order;

    const IssueAlignment& at(std::size_t a, std::size_t b) const { return cells[a * topics.size() + b]; }
};

// tau for every topic pair plus the optimal leaf order on d = (1 - tau) / 2
// (masked pairs at 0.5).
IssueAlignmentMatrix issue_alignment_matrix(const std::map<std::string, std::map<std::string, Membership>>& by_topic);

// Optimal leaf order of an average-linkage tree over topics.
std::vector<std::size_t> topic_leaf_order(const IssueAlignmentMatrix& matrix);

}  // namespace rtpol
