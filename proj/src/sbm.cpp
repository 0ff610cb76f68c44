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

#include "rtpol/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace rtpol {

namespace {

double lnfact(std::int64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); }

double lnbinom(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) throw std::logic_error("lnbinom out of domain");
    return lnfact(n) - lnfact(k) - lnfact(n - k);
}

struct BlockStats {
    std::int64_t e[2][2] = {{0, 0}, {0, 0}};
    std::int64_t n[2] = {0, 0};
};

// sum ln A_ij! - sum ln k_i^+! - sum ln k_i^-! : the partition independent
// part of the microcanonical entropy
double node_terms(const TrendNetwork& net, const Adjacency& adj) {
    double s = 0.0;
    for (const auto& e : net.edges) s += lnfact(e.weight);
    for (std::size_t v = 0; v < net.size(); ++v) s -= lnfact(adj.out_degree[v]) + lnfact(adj.in_degree[v]);
    return s;
}

DescriptionLength block_terms(const BlockStats& st, std::int64_t n_nodes, std::int64_t n_edges) {
    DescriptionLength dl;
    if (n_nodes == 0) return dl;
    int nonempty = 0;
    for (int r = 0; r < 2; ++r) {
        if (st.n[r] == 0) continue;
        ++nonempty;
        const std::int64_t e_out = st.e[r][0] + st.e[r][1];
        const std::int64_t e_in = st.e[0][r] + st.e[1][r];
        dl.entropy += lnfact(e_out) + lnfact(e_in);
        dl.partition -= lnfact(st.n[r]);
        dl.degrees += lnbinom(st.n[r] + e_out - 1, e_out) + lnbinom(st.n[r] + e_in - 1, e_in);
    }
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) dl.entropy -= lnfact(st.e[r][s]);
    }
    dl.partition += lnfact(n_nodes) + lnbinom(n_nodes - 1, nonempty - 1) + std::log(static_cast<double>(n_nodes));
    dl.edges = lnbinom(static_cast<std::int64_t>(nonempty) * nonempty + n_edges - 1, n_edges);
    return dl;
}

BlockStats stats_of(const TrendNetwork& net, std::span<const std::uint8_t> b) {
    BlockStats st;
    for (auto x : b) ++st.n[x];
    for (const auto& e : net.edges) st.e[b[e.source]][b[e.target]] += e.weight;
    return st;
}

class TwoBlockSampler {
public:
    TwoBlockSampler(const TrendNetwork& net, const Adjacency& adj, std::vector<std::uint8_t> b)
        : net_(&net), adj_(&adj), b_(std::move(b)) {
        stats_ = stats_of(net, b_);
        n_edges_ = net.total_weight();
        current_ = block_dl(stats_);
    }

    double current() const { return current_; }
    const std::vector<std::uint8_t>& assignment() const { return b_; }

    // Change in description length if v switches block.
    double delta(NodeId v, BlockStats& moved) const {
        moved = stats_;
        const int r = b_[v];
        const int s = 1 - r;
        for (const auto& e : adj_->successors(v)) {
            const int t = b_[e.node];
            moved.e[r][t] -= e.weight;
            moved.e[s][t] += e.weight;
        }
        for (const auto& e : adj_->predecessors(v)) {
            const int t = b_[e.node];
            moved.e[t][r] -= e.weight;
            moved.e[t][s] += e.weight;
        }
        --moved.n[r];
        ++moved.n[s];
        return block_dl(moved) - current_;
    }

    void apply(NodeId v, const BlockStats& moved, double d) {
        b_[v] = static_cast<std::uint8_t>(1 - b_[v]);
        stats_ = moved;
        current_ += d;
    }

    void resync() { current_ = block_dl(stats_); }

private:
    double block_dl(const BlockStats& st) const {
        return block_terms(st, static_cast<std::int64_t>(net_->size()), n_edges_).total();
    }

    const TrendNetwork* net_;
    const Adjacency* adj_;
    std::vector<std::uint8_t> b_;
    BlockStats stats_;
    std::int64_t n_edges_ = 0;
    double current_ = 0.0;
};

// Greedy modularity agglomeration on the symmetrized graph down to two groups.
// Each round every group (in seeded random order) merges with its best
// neighbor if that raises modularity; groups already merged in the round are
// skipped. Once no merge helps, the best remaining pair merges one at a time.
std::vector<std::uint8_t> agglomerative_bipartition(const TrendNetwork& net, std::mt19937_64& rng) {
    const std::size_t n = net.size();
    std::vector<std::uint8_t> labels(n, 0);
    if (n < 2) return labels;

    std::vector<std::unordered_map<std::uint32_t, std::int64_t>> links(n);
    std::vector<std::int64_t> strength(n, 0);
    for (const auto& e : net.edges) {
        links[e.source][e.target] += e.weight;
        links[e.target][e.source] += e.weight;
        strength[e.source] += e.weight;
        strength[e.target] += e.weight;
    }
    const double two_m = static_cast<double>(std::accumulate(strength.begin(), strength.end(), std::int64_t{0}));
    std::vector<std::vector<NodeId>> members(n);
    for (NodeId v = 0; v < n; ++v) members[v] = {v};
    std::vector<std::uint32_t> alive(n);
    std::iota(alive.begin(), alive.end(), 0u);

    auto gain = [&](std::uint32_t c, std::uint32_t d, std::int64_t w) {
        if (two_m == 0.0) return 0.0;
        const double ac = static_cast<double>(strength[c]) / two_m;
        const double ad = static_cast<double>(strength[d]) / two_m;
        return 2.0 * (static_cast<double>(w) / two_m - ac * ad);
    };
    auto merge = [&](std::uint32_t c, std::uint32_t d) {
        if (members[c].size() < members[d].size()) std::swap(c, d);
        for (const auto& [x, w] : links[d]) {
            if (x == c) continue;
            links[c][x] += w;
            auto& lx = links[x];
            lx.erase(d);
            lx[c] += w;
        }
        links[c].erase(d);
        links[d].clear();
        strength[c] += strength[d];
        members[c].insert(members[c].end(), members[d].begin(), members[d].end());
        members[d].clear();
        return d;  // the absorbed group
    };

    std::vector<char> dead(n, 0);
    std::size_t n_alive = n;
    auto drop_dead = [&] {
        alive.erase(std::remove_if(alive.begin(), alive.end(), [&](std::uint32_t c) { return dead[c] != 0; }),
                    alive.end());
    };
    // rounds of positive-gain merges, each group at most once per round
    for (bool merged_any = true; merged_any && n_alive > 2;) {
        merged_any = false;
        std::shuffle(alive.begin(), alive.end(), rng);
        std::vector<char> touched(n, 0);
        for (std::uint32_t c : alive) {
            if (n_alive <= 2) break;
            if (dead[c] || touched[c]) continue;
            std::uint32_t best = c;
            double best_gain = 0.0;
            for (const auto& [d, w] : links[c]) {
                if (touched[d]) continue;
                const double g = gain(c, d, w);
                if (g > best_gain || (g == best_gain && best != c && d < best)) {
                    best_gain = g;
                    best = d;
                }
            }
            if (best == c) continue;
            const std::uint32_t gone = merge(c, best);
            dead[gone] = 1;
            touched[c] = touched[best] = 1;
            --n_alive;
            merged_any = true;
        }
        drop_dead();
    }
    // then the least harmful merge at a time until two groups remain
    while (n_alive > 2) {
        std::sort(alive.begin(), alive.end());
        std::uint32_t bc = 0, bd = 0;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::uint32_t c : alive) {
            for (const auto& [d, w] : links[c]) {
                const double g = gain(c, d, w);
                if (g > best_gain || (g == best_gain && std::make_pair(std::min(c, d), std::max(c, d)) <
                                                             std::make_pair(std::min(bc, bd), std::max(bc, bd)))) {
                    best_gain = g;
                    bc = c;
                    bd = d;
                }
            }
        }
        if (best_gain == -std::numeric_limits<double>::infinity()) {
            // disconnected groups: join the two lightest
            std::sort(alive.begin(), alive.end(), [&](std::uint32_t x, std::uint32_t y) {
                if (strength[x] != strength[y]) return strength[x] < strength[y];
                if (members[x].size() != members[y].size()) return members[x].size() < members[y].size();
                return x < y;
            });
            bc = alive[0];
            bd = alive[1];
        }
        dead[merge(bc, bd)] = 1;
        --n_alive;
        drop_dead();
    }
    // the group holding node 0 becomes block 0
    std::sort(alive.begin(), alive.end());
    const std::uint32_t first =
        std::find(members[alive[0]].begin(), members[alive[0]].end(), NodeId{0}) != members[alive[0]].end()
            ? alive[0]
            : alive[1];
    for (std::uint32_t c : alive) {
        for (NodeId v : members[c]) labels[v] = c == first ? 0 : 1;
    }
    return labels;
}

}  // namespace

std::array<std::int64_t, 2> BlockState::block_sizes() const {
    std::array<std::int64_t, 2> sizes{0, 0};
    for (auto b : assignment) ++sizes[b];
    return sizes;
}

BlockState make_block_state(const TrendNetwork& net, std::vector<std::uint8_t> assignment, int n_blocks) {
    if (n_blocks != 1 && n_blocks != 2) throw std::invalid_argument("n_blocks must be 1 or 2");
    if (assignment.size() != net.size()) throw std::invalid_argument("assignment does not cover every node");
    for (auto b : assignment) {
        if (b >= n_blocks) throw std::invalid_argument("block index out of range");
    }
    BlockState st;
    st.n_blocks = n_blocks;
    st.assignment = std::move(assignment);
    const Adjacency adj(net);
    st.out_degree = adj.out_degree;
    st.in_degree = adj.in_degree;
    for (const auto& e : net.edges) st.edge_counts[st.assignment[e.source]][st.assignment[e.target]] += e.weight;
    return st;
}

DescriptionLength description_length_terms(const TrendNetwork& net, const BlockState& state) {
    if (state.assignment.size() != net.size()) throw std::invalid_argument("state is missing node assignments");
    if (state.n_blocks != 1 && state.n_blocks != 2) throw std::invalid_argument("n_blocks must be 1 or 2");
    for (auto b : state.assignment) {
        if (b >= state.n_blocks) throw std::invalid_argument("block index out of range");
    }
    const Adjacency adj(net);
    const BlockStats st = stats_of(net, state.assignment);
    DescriptionLength dl = block_terms(st, static_cast<std::int64_t>(net.size()), net.total_weight());
    if (net.size() > 0) dl.entropy += node_terms(net, adj);
    return dl;
}

double description_length(const TrendNetwork& net, const BlockState& state) {
    return description_length_terms(net, state).total();
}

BlockState infer_blocks(const TrendNetwork& net, int n_blocks, std::uint64_t seed, const InferenceSchedule& schedule) {
    const std::size_t n = net.size();
    if (n_blocks == 1 || n < 2) return make_block_state(net, std::vector<std::uint8_t>(n, 0), n_blocks);
    if (n_blocks != 2) throw std::invalid_argument("n_blocks must be 1 or 2");

    std::mt19937_64 rng(seed);
    const Adjacency adj(net);
    TwoBlockSampler sampler(net, adj, agglomerative_bipartition(net, rng));

    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t total = static_cast<std::size_t>(schedule.sweeps) * n;
    const std::size_t burn_in = static_cast<std::size_t>(schedule.burn_in_sweeps) * n;

    std::vector<std::uint8_t> best = sampler.assignment();
    double best_dl = sampler.current();
    BlockStats moved;
    for (std::size_t t = 0; t < total; ++t) {
        if (t == burn_in) {
            // continue the zero temperature phase from the best burn-in state
            sampler = TwoBlockSampler(net, adj, best);
        }
        const NodeId v = pick(rng);
        const double d = sampler.delta(v, moved);
        const bool hot = t < burn_in;
        const double u = hot ? unif(rng) : 0.0;
        if (d < 0.0 || (hot && u < std::exp(-d))) {
            sampler.apply(v, moved, d);
            if (hot && sampler.current() < best_dl - 1e-9) {
                best_dl = sampler.current();
                best = sampler.assignment();
            }
        }
    }
    if (total <= burn_in) sampler = TwoBlockSampler(net, adj, best);

    // greedy finishing sweeps
    for (bool improved = true; improved;) {
        improved = false;
        for (NodeId v = 0; v < n; ++v) {
            const double d = sampler.delta(v, moved);
            if (d < -1e-9) {
                sampler.apply(v, moved, d);
                improved = true;
            }
        }
    }
    sampler.resync();
    if (sampler.current() <= best_dl) best = sampler.assignment();
    return make_block_state(net, std::move(best), 2);
}

BlockState brute_force_min_dl(const TrendNetwork& net) {
    const std::size_t n = net.size();
    if (n > kBruteForceMaxNodes) throw std::invalid_argument("brute_force_min_dl: network too large");
    std::vector<std::uint8_t> one(n, 0);
    if (n < 2) return make_block_state(net, one, 1);

    const Adjacency adj(net);
    const double fixed = node_terms(net, adj);
    const auto n_nodes = static_cast<std::int64_t>(n);
    const auto n_edges = net.total_weight();
    double best = block_terms(stats_of(net, one), n_nodes, n_edges).total() + fixed;
    std::vector<std::uint8_t> best_b = one;
    int best_blocks = 1;

    std::vector<std::uint8_t> b(n, 0);
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        for (std::size_t v = 1; v < n; ++v) b[v] = static_cast<std::uint8_t>((mask >> (v - 1)) & 1u);
        const double dl = block_terms(stats_of(net, b), n_nodes, n_edges).total() + fixed;
        if (dl < best) {
            best = dl;
            best_b = b;
            best_blocks = 2;
        }
    }
    return make_block_state(net, std::move(best_b), best_blocks);
}

std::string to_string(Verdict v) { return v == Verdict::two_blocks ? "TWO_BLOCKS" : "ONE_BLOCK"; }

Verdict parse_verdict(const std::string& text) {
    if (text == "TWO_BLOCKS") return Verdict::two_blocks;
    if (text == "ONE_BLOCK") return Verdict::one_block;
    throw std::invalid_argument("unknown verdict '" + text + "'");
}

std::vector<std::uint64_t> standard_seeds(std::uint64_t base, int runs) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(std::max(runs, 0)));
    std::uint64_t x = base;
    for (int i = 0; i < runs; ++i) {
        // splitmix64
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        seeds.push_back(z ^ (z >> 31));
    }
    return seeds;
}

PolarizationVerdict select_model(const TrendNetwork& core, const Embedding2D& embedding,
                                 const SelectOptions& options) {
    if (embedding.size() != core.size()) throw std::invalid_argument("select_model: missing embedding");
    PolarizationVerdict out;
    out.trend_id = core.trend_id;
    const std::size_t n = core.size();
    out.dl_one = description_length(core, make_block_state(core, std::vector<std::uint8_t>(n, 0), 1));
    out.dl_two = out.dl_one;

    double lowest_two = std::numeric_limits<double>::infinity();
    double best_sil = -std::numeric_limits<double>::infinity();
    double best_dl = 0.0;
    std::vector<std::uint8_t> best_assignment;
    for (std::size_t i = 0; i < options.seeds.size(); ++i) {
        const BlockState st = infer_blocks(core, 2, options.seeds[i], options.schedule);
        const double dl = description_length(core, st);
        lowest_two = std::min(lowest_two, dl);
        const auto sizes = st.block_sizes();
        if (!(dl < out.dl_one) || sizes[0] == 0 || sizes[1] == 0) continue;
        std::vector<int> labels(st.assignment.begin(), st.assignment.end());
        const double sil = silhouette_score(embedding.coordinates, labels);
        if (sil > best_sil) {
            best_sil = sil;
            best_dl = dl;
            best_assignment = st.assignment;
            out.seed_best = static_cast<int>(i);
        }
    }
    if (out.seed_best < 0) {
        if (std::isfinite(lowest_two)) out.dl_two = lowest_two;
        return out;
    }
    out.dl_two = best_dl;
    out.silhouette = best_sil;
    if (best_sil > options.silhouette_threshold) {
        out.verdict = Verdict::two_blocks;
        std::map<std::string, int> partition;
        for (std::size_t v = 0; v < n; ++v) partition[core.nodes[v]] = best_assignment[v] == 0 ? -1 : 1;
        for (const auto& [leaf, neighbor] : core.pruned_leaves) {
            auto it = partition.find(neighbor);
            if (it != partition.end()) partition[leaf] = it->second;
        }
        out.partition = std::move(partition);
    }
    return out;
}

}  // namespace rtpol
