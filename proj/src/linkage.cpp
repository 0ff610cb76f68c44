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

#include "rtpol/linkage.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rtpol {

DistanceMatrix::DistanceMatrix(std::size_t n, double fill) : n_(n), d_(n < 2 ? 0 : n * (n - 1) / 2, fill) {}

std::size_t DistanceMatrix::index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

double DistanceMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return d_[index(i, j)];
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
    if (i == j) return;
    d_[index(i, j)] = d;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
};

}  // namespace

std::vector<std::size_t> Dendrogram::leaf_order() const {
    if (n_leaves == 0) return {};
    if (merges.empty()) return {0};
    std::vector<std::size_t> order;
    order.reserve(n_leaves);
    std::vector<std::size_t> stack{n_leaves + merges.size() - 1};
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        if (id < n_leaves) {
            order.push_back(id);
            continue;
        }
        const auto& m = merges[id - n_leaves];
        stack.push_back(m.right);
        stack.push_back(m.left);
    }
    return order;
}

std::vector<int> Dendrogram::cut(std::size_t k) const {
    if (k == 0 || k > n_leaves) throw std::invalid_argument("cut: invalid cluster count");
    std::vector<std::size_t> leaf_of(n_leaves + merges.size());
    std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n_leaves), std::size_t{0});
    UnionFind uf(n_leaves);
    for (std::size_t m = 0; m < merges.size(); ++m) {
        leaf_of[n_leaves + m] = leaf_of[merges[m].left];
        if (m + k >= n_leaves) continue;
        const std::size_t a = uf.find(leaf_of[merges[m].left]);
        const std::size_t b = uf.find(leaf_of[merges[m].right]);
        uf.parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> labels(n_leaves, -1);
    std::vector<int> root_label(n_leaves, -1);
    int next = 0;
    for (std::size_t i = 0; i < n_leaves; ++i) {
        const std::size_t r = uf.find(i);
        if (root_label[r] < 0) root_label[r] = next++;
        labels[i] = root_label[r];
    }
    return labels;
}

Dendrogram average_linkage(const DistanceMatrix& input) {
    const std::size_t n = input.size();
    Dendrogram tree;
    tree.n_leaves = n;
    if (n < 2) return tree;

    DistanceMatrix d = input;
    std::vector<std::size_t> size(n, 1);
    std::vector<char> active(n, 1);
    struct RawMerge {
        std::size_t a, b;
        double distance;
    };
    std::vector<RawMerge> raw;
    raw.reserve(n - 1);
    std::vector<std::size_t> chain;
    chain.reserve(n);

    for (std::size_t remaining = n; remaining > 1;) {
        if (chain.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                if (active[i]) {
                    chain.push_back(i);
                    break;
                }
            }
        }
        const std::size_t a = chain.back();
        const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
        std::size_t b = prev;
        double best = prev < n ? d(a, prev) : std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (!active[j] || j == a) continue;
            const double dj = d(a, j);
            if (dj < best) {
                best = dj;
                b = j;
            }
        }
        if (b == prev && prev < n) {
            chain.pop_back();
            chain.pop_back();
            raw.push_back({a, b, best});
            // merged cluster lives in slot `keep`
            const std::size_t keep = std::min(a, b);
            const std::size_t drop = std::max(a, b);
            const double sa = static_cast<double>(size[a]);
            const double sb = static_cast<double>(size[b]);
            for (std::size_t k = 0; k < n; ++k) {
                if (!active[k] || k == a || k == b) continue;
                d.set(keep, k, (sa * d(a, k) + sb * d(b, k)) / (sa + sb));
            }
            size[keep] = size[a] + size[b];
            active[drop] = 0;
            --remaining;
        } else {
            chain.push_back(b);
        }
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawMerge& x, const RawMerge& y) { return x.distance < y.distance; });
    UnionFind uf(n);
    std::vector<std::size_t> cluster_id(n);
    std::iota(cluster_id.begin(), cluster_id.end(), std::size_t{0});
    std::vector<std::size_t> cluster_size(n, 1);
    for (std::size_t m = 0; m < raw.size(); ++m) {
        const std::size_t ra = uf.find(raw[m].a);
        const std::size_t rb = uf.find(raw[m].b);
        std::size_t left = cluster_id[ra], right = cluster_id[rb];
        if (left > right) std::swap(left, right);
        const std::size_t root = std::min(ra, rb);
        uf.parent[std::max(ra, rb)] = root;
        cluster_size[root] = cluster_size[ra] + cluster_size[rb];
        cluster_id[root] = n + m;
        tree.merges.push_back({left, right, raw[m].distance, cluster_size[root]});
    }
    return tree;
}

double adjacent_cost(const std::vector<std::size_t>& order, const DistanceMatrix& d) {
    double c = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) c += d(order[i - 1], order[i]);
    return c;
}

std::vector<std::size_t> optimal_leaf_order(const Dendrogram& tree, const DistanceMatrix& d) {
    const std::size_t n = tree.n_leaves;
    if (n <= 2) {
        std::vector<std::size_t> id(n);
        std::iota(id.begin(), id.end(), std::size_t{0});
        return id;
    }
    const std::size_t n_nodes = n + tree.merges.size();

    // leaves of every node are contiguous in the plain leaf order
    const auto plain = tree.leaf_order();
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[plain[p]] = p;
    std::vector<std::size_t> lo(n_nodes), hi(n_nodes);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = pos[i];
        hi[i] = pos[i] + 1;
    }
    for (std::size_t m = 0; m < tree.merges.size(); ++m) {
        lo[n + m] = std::min(lo[tree.merges[m].left], lo[tree.merges[m].right]);
        hi[n + m] = std::max(hi[tree.merges[m].left], hi[tree.merges[m].right]);
    }
    auto leaves = [&](std::size_t node) {
        return std::vector<std::size_t>(plain.begin() + static_cast<std::ptrdiff_t>(lo[node]),
                                        plain.begin() + static_cast<std::ptrdiff_t>(hi[node]));
    };
    auto contains = [&](std::size_t node, std::size_t leaf) { return pos[leaf] >= lo[node] && pos[leaf] < hi[node]; };
    // leaves that may end an ordering of `node` that starts at `leaf`
    auto far_side = [&](std::size_t node, std::size_t leaf) {
        if (node < n) return std::vector<std::size_t>{leaf};
        const auto& m = tree.merges[node - n];
        return contains(m.left, leaf) ? leaves(m.right) : leaves(m.left);
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n * n, inf);
    auto M = [&](std::size_t i, std::size_t j) -> double& { return best[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) M(i, i) = 0.0;

    std::vector<double> via(n, inf);
    for (std::size_t m = 0; m < tree.merges.size(); ++m) {
        const std::size_t left = tree.merges[m].left;
        const std::size_t right = tree.merges[m].right;
        const auto lhs = leaves(left);
        const auto rhs = leaves(right);
        for (std::size_t i : lhs) {
            const auto ks = far_side(left, i);
            for (std::size_t l : rhs) {
                double v = inf;
                for (std::size_t k : ks) v = std::min(v, M(i, k) + d(k, l));
                via[l] = v;
            }
            for (std::size_t j : rhs) {
                double v = inf;
                for (std::size_t l : far_side(right, j)) v = std::min(v, via[l] + M(l, j));
                M(i, j) = v;
                M(j, i) = v;
            }
        }
    }

    const std::size_t root = n_nodes - 1;
    const auto& top = tree.merges.back();
    std::size_t s_best = 0, e_best = 0;
    double c_best = inf;
    for (std::size_t s = 0; s < n; ++s) {
        const bool s_left = contains(top.left, s);
        auto ends = leaves(s_left ? top.right : top.left);
        std::sort(ends.begin(), ends.end());
        for (std::size_t e : ends) {
            if (M(s, e) < c_best - 1e-12) {
                c_best = M(s, e);
                s_best = s;
                e_best = e;
            }
        }
    }

    std::vector<std::size_t> order;
    order.reserve(n);
    // iterative reconstruction: (node, start, end)
    struct Frame {
        std::size_t node, start, end;
    };
    std::vector<Frame> stack{{root, s_best, e_best}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.node < n) {
            order.push_back(f.start);
            continue;
        }
        const auto& mg = tree.merges[f.node - n];
        const bool start_left = contains(mg.left, f.start);
        const std::size_t first = start_left ? mg.left : mg.right;
        const std::size_t second = start_left ? mg.right : mg.left;
        std::size_t kb = f.start, lb = f.end;
        double cb = inf;
        for (std::size_t k : far_side(first, f.start)) {
            for (std::size_t l : far_side(second, f.end)) {
                const double c = M(f.start, k) + d(k, l) + M(l, f.end);
                if (c < cb - 1e-12) {
                    cb = c;
                    kb = k;
                    lb = l;
                }
            }
        }
        stack.push_back({second, lb, f.end});
        stack.push_back({first, f.start, kb});
    }
    return order;
}

}  // namespace rtpol
