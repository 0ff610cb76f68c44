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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtpol/layout.hpp"
#include "rtpol/network.hpp"

namespace rtpol {

// Partition of a network into at most two blocks plus the sufficient
// statistics of the degree-corrected model.
struct BlockState {
    std::vector<std::uint8_t> assignment;  // node -> block in {0, 1}
    int n_blocks = 1;
    std::array<std::array<std::int64_t, 2>, 2> edge_counts{};  // [from block][to block]
    std::vector<std::int64_t> out_degree;
    std::vector<std::int64_t> in_degree;

    std::array<std::int64_t, 2> block_sizes() const;
};

// Builds a consistent state. Throws std::invalid_argument when the assignment
// does not cover every node, uses a block >= n_blocks, or n_blocks is not 1 or 2.
BlockState make_block_state(const TrendNetwork& net, std::vector<std::uint8_t> assignment, int n_blocks);

// Components of the description length, all in nats.
struct DescriptionLength {
    double entropy = 0.0;    // -log P(A | k, e, b), microcanonical
    double partition = 0.0;  // -log P(b)
    double degrees = 0.0;    // -log P(k | e, b), uniform over degree sequences
    double edges = 0.0;      // -log P(e), uniform over block matrices

    double total() const { return entropy + partition + degrees + edges; }
};

// Microcanonical degree-corrected directed SBM description length, with edge
// weights read as multiplicities. Priors are counted over the nonempty blocks,
// so a two-block state with an empty block costs the same as one block.
DescriptionLength description_length_terms(const TrendNetwork& net, const BlockState& state);
double description_length(const TrendNetwork& net, const BlockState& state);

struct InferenceSchedule {
    int sweeps = 50;         // proposed single-node moves per run, in units of n
    int burn_in_sweeps = 10; // first burn_in_sweeps * n proposals at temperature 1
};

// n_blocks = 1 returns the trivial state. n_blocks = 2 runs a seeded
// agglomerative initialization followed by single-node Metropolis moves
// (temperature 1 during burn-in, then zero temperature) and a greedy
// finishing sweep; the lowest description length state seen is returned.
BlockState infer_blocks(const TrendNetwork& net, int n_blocks, std::uint64_t seed,
                        const InferenceSchedule& schedule = {});

inline constexpr std::size_t kBruteForceMaxNodes = 20;

// Exhaustive minimum over the one-block state and every bipartition (node 0
// pinned to block 0). Throws std::invalid_argument above kBruteForceMaxNodes.
BlockState brute_force_min_dl(const TrendNetwork& net);

enum class Verdict { one_block, two_blocks };

std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& text);

struct PolarizationVerdict {
    std::string trend_id;
    Verdict verdict = Verdict::one_block;
    // user -> -1 / +1 for the kept partition, pruned leaves included
    std::optional<std::map<std::string, int>> partition;
    double dl_one = 0.0;
    double dl_two = 0.0;
    std::optional<double> silhouette;
    int seed_best = -1;  // index into the seed list, -1 when no candidate
};

struct SelectOptions {
    std::vector<std::uint64_t> seeds;  // one inference run per seed
    double silhouette_threshold = 0.4;
    InferenceSchedule schedule;
};

// Seeds for `runs` independent runs derived from a base seed.
std::vector<std::uint64_t> standard_seeds(std::uint64_t base, int runs);

// Runs the two-block inference once per seed, keeps the runs whose two-block
// description length beats the one-block model, scores them by silhouette on
// the layout of the (pruned) network and picks the best. TWO_BLOCKS iff such
// a run exists with silhouette above the threshold. Pruned leaves inherit the
// cluster of their sole neighbor.
PolarizationVerdict select_model(const TrendNetwork& core, const Embedding2D& embedding,
                                 const SelectOptions& options);

}  // namespace rtpol
