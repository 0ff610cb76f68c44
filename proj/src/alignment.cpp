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

#include "rtpol/alignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtpol {

int ClusterVector::value(const std::string& user) const {
    auto it = values.find(user);
    return it == values.end() ? 0 : it->second;
}

ClusterVector cluster_vector(const PolarizationVerdict& verdict, std::string topic) {
    ClusterVector cv;
    cv.trend_id = verdict.trend_id;
    cv.topic = std::move(topic);
    if (verdict.verdict != Verdict::two_blocks || !verdict.partition) return cv;
    for (const auto& [user, c] : *verdict.partition) {
        if (c != 0) cv.values.emplace(user, c < 0 ? -1 : 1);
    }
    return cv;
}

PairAlignment user_alignment(std::span<const ClusterVector> vectors, const std::string& i, const std::string& j) {
    std::int64_t sum = 0;
    PairAlignment out;
    for (const auto& v : vectors) {
        const int p = v.value(i) * v.value(j);
        sum += p;
        out.m += p < 0 ? -p : p;
    }
    if (out.m > 0) out.alpha = static_cast<double>(sum) / static_cast<double>(out.m);
    return out;
}

AlignmentMatrix::AlignmentMatrix(std::vector<std::string> users) : users_(std::move(users)) {
    std::sort(users_.begin(), users_.end());
    users_.erase(std::unique(users_.begin(), users_.end()), users_.end());
    sum_.assign(users_.size() * users_.size(), 0);
    support_.assign(users_.size() * users_.size(), 0);
}

std::optional<std::size_t> AlignmentMatrix::index_of(const std::string& user) const {
    auto it = std::lower_bound(users_.begin(), users_.end(), user);
    if (it == users_.end() || *it != user) return std::nullopt;
    return static_cast<std::size_t>(it - users_.begin());
}

std::optional<double> AlignmentMatrix::alpha(std::size_t i, std::size_t j) const {
    const auto m = support(i, j);
    if (m == 0) return std::nullopt;
    return static_cast<double>(sum(i, j)) / static_cast<double>(m);
}

void AlignmentMatrix::accumulate(const ClusterVector& vector) {
    std::vector<std::pair<std::size_t, int>> present;
    for (const auto& [user, c] : vector.values) {
        if (c == 0) continue;
        if (auto idx = index_of(user)) present.emplace_back(*idx, c);
    }
    const std::size_t n = size();
    for (std::size_t a = 0; a < present.size(); ++a) {
        const auto [i, ci] = present[a];
        for (std::size_t b = a; b < present.size(); ++b) {
            const auto [j, cj] = present[b];
            const int p = ci * cj;
            sum_[i * n + j] += p;
            support_[i * n + j] += 1;
            if (i != j) {
                sum_[j * n + i] += p;
                support_[j * n + i] += 1;
            }
        }
    }
}

AlignmentMatrix build_alignment_matrix(std::span<const ClusterVector> vectors, std::span<const std::string> users,
                                       const std::optional<std::string>& topic) {
    AlignmentMatrix matrix(std::vector<std::string>(users.begin(), users.end()));
    for (const auto& v : vectors) {
        if (topic && v.topic != *topic) continue;
        matrix.accumulate(v);
    }
    return matrix;
}

char to_char(Camp c) { return c == Camp::l ? 'l' : 'r'; }

Camp parse_camp(const std::string& text) {
    if (text == "l") return Camp::l;
    if (text == "r") return Camp::r;
    throw std::invalid_argument("unknown camp '" + text + "', expected l or r");
}

CampAssignment extract_camps(const AlignmentMatrix& matrix, const std::map<std::string, Camp>& anchors,
                             std::size_t max_ordered_users) {
    const std::size_t n = matrix.size();
    if (n < 2) throw std::invalid_argument("extract_camps: need at least two users");
    DistanceMatrix d(n, 0.5);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (auto a = matrix.alpha(i, j)) {
                d.set(i, j, (1.0 - *a) / 2.0);
                any = true;
            }
        }
    }
    if (!any) throw std::invalid_argument("extract_camps: alignment matrix is fully masked");

    CampAssignment out;
    out.tree = average_linkage(d);
    const auto labels = out.tree.cut(2);
    // label 0 always holds users()[0], the smallest id
    int agree = 0, disagree = 0;
    for (const auto& [user, camp] : anchors) {
        auto idx = matrix.index_of(user);
        if (!idx) continue;
        const Camp mine = labels[*idx] == 0 ? Camp::l : Camp::r;
        (mine == camp ? agree : disagree) += 1;
    }
    const bool swap = disagree > agree;
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = (labels[i] == 0) != swap;
        out.camp.emplace(matrix.users()[i], left ? Camp::l : Camp::r);
    }
    out.leaf_order = n <= max_ordered_users ? optimal_leaf_order(out.tree, d) : out.tree.leaf_order();
    return out;
}

Membership membership_from_terms(std::span<const std::pair<double, Camp>> terms, bool halved) {
    double sum[2] = {0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (const auto& [alpha, camp] : terms) {
        const int k = camp == Camp::l ? 0 : 1;
        sum[k] += alpha;
        ++count[k];
    }
    Membership m;
    if (count[0] + count[1] == 0) return m;
    const double scale = halved ? 0.5 : 1.0;
    if (count[0] > 0) m.nu_l = scale * sum[0] / static_cast<double>(count[0]);
    if (count[1] > 0) m.nu_r = scale * sum[1] / static_cast<double>(count[1]);
    m.mu = (m.nu_r - m.nu_l) / 2.0;
    return m;
}

Membership membership(const AlignmentMatrix& matrix, const CampAssignment& camps, const std::string& user,
                      bool halved) {
    auto i = matrix.index_of(user);
    if (!i) throw std::invalid_argument("membership: user '" + user + "' is not in the matrix");
    std::vector<std::pair<double, Camp>> terms;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
        if (j == *i) continue;
        auto it = camps.camp.find(matrix.users()[j]);
        if (it == camps.camp.end()) continue;
        if (auto a = matrix.alpha(*i, j)) terms.emplace_back(*a, it->second);
    }
    return membership_from_terms(terms, halved);
}

std::map<std::string, Membership> membership_scores(std::span<const ClusterVector> vectors,
                                                    const CampAssignment& camps,
                                                    std::span<const std::string> users,
                                                    const std::optional<std::string>& topic, bool halved) {
    std::vector<std::string> rows(users.begin(), users.end());
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<std::string> cols;
    std::vector<Camp> col_camp;
    for (const auto& [u, c] : camps.camp) {
        cols.push_back(u);
        col_camp.push_back(c);
    }
    const std::size_t nr = rows.size(), nc = cols.size();
    std::vector<std::int32_t> sum(nr * nc, 0), support(nr * nc, 0);
    auto find = [](const std::vector<std::string>& v, const std::string& u) -> std::optional<std::size_t> {
        auto it = std::lower_bound(v.begin(), v.end(), u);
        if (it == v.end() || *it != u) return std::nullopt;
        return static_cast<std::size_t>(it - v.begin());
    };

    std::vector<std::pair<std::size_t, int>> in_rows, in_cols;
    for (const auto& v : vectors) {
        if (topic && v.topic != *topic) continue;
        in_rows.clear();
        in_cols.clear();
        for (const auto& [u, c] : v.values) {
            if (c == 0) continue;
            if (auto r = find(rows, u)) in_rows.emplace_back(*r, c);
            if (auto k = find(cols, u)) in_cols.emplace_back(*k, c);
        }
        for (const auto& [r, cr] : in_rows) {
            for (const auto& [k, ck] : in_cols) {
                sum[r * nc + k] += cr * ck;
                support[r * nc + k] += 1;
            }
        }
    }

    std::map<std::string, Membership> out;
    std::vector<std::pair<double, Camp>> terms;
    for (std::size_t r = 0; r < nr; ++r) {
        terms.clear();
        for (std::size_t k = 0; k < nc; ++k) {
            const auto m = support[r * nc + k];
            if (m == 0 || cols[k] == rows[r]) continue;
            terms.emplace_back(static_cast<double>(sum[r * nc + k]) / m, col_camp[k]);
        }
        out.emplace(rows[r], membership_from_terms(terms, halved));
    }
    return out;
}

IssueAlignment issue_alignment(const std::map<std::string, Membership>& t1,
                               const std::map<std::string, Membership>& t2) {
    IssueAlignment out;
    double total = 0.0;
    for (const auto& [user, m1] : t1) {
        if (!m1.mu) continue;
        auto it = t2.find(user);
        if (it == t2.end() || !it->second.mu) continue;
        total += *m1.mu * *it->second.mu;
        ++out.n;
    }
    if (out.n > 0) out.tau = total / static_cast<double>(out.n);
    return out;
}

std::vector<std::size_t> topic_leaf_order(const IssueAlignmentMatrix& matrix) {
    const std::size_t n = matrix.topics.size();
    DistanceMatrix d(n, 0.5);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (const auto& t = matrix.at(a, b).tau) d.set(a, b, (1.0 - *t) / 2.0);
        }
    }
    return optimal_leaf_order(average_linkage(d), d);
}

IssueAlignmentMatrix issue_alignment_matrix(const std::map<std::string, std::map<std::string, Membership>>& by_topic) {
    IssueAlignmentMatrix out;
    for (const auto& [topic, _] : by_topic) out.topics.push_back(topic);
    const std::size_t n = out.topics.size();
    out.cells.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const auto ia = issue_alignment(by_topic.at(out.topics[a]), by_topic.at(out.topics[b]));
            out.cells[a * n + b] = ia;
            out.cells[b * n + a] = ia;
        }
    }
    out.leaf_order = topic_leaf_order(out);
    return out;
}

}  // namespace rtpol
