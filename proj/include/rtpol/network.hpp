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

#include "rtpol/records.hpp"

namespace rtpol {

using NodeId = std::uint32_t;

struct Edge {
    NodeId source = 0;  // retweeter
    NodeId target = 0;  // retweeted user
    std::int64_t weight = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct RetweetEvent {
    std::string retweeter;
    std::string retweeted;
};

// Directed weighted retweet graph of one trend. Nodes are sorted user ids,
// edges are sorted by (source, target) and carry retweet multiplicities.
struct TrendNetwork {
    std::string trend_id;
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::map<std::string, std::string> pruned_leaves;  // leaf -> sole neighbor
    bool pruned = false;

    std::size_t size() const { return nodes.size(); }
    std::int64_t total_weight() const;
    std::optional<NodeId> index_of(const std::string& user) const;
};

// Compressed adjacency in both directions, weights kept as multiplicities.
struct Adjacency {
    struct Entry {
        NodeId node;
        std::int64_t weight;
    };
    std::vector<std::size_t> out_offset, in_offset;
    std::vector<Entry> out, in;
    std::vector<std::int64_t> out_degree, in_degree;

    explicit Adjacency(const TrendNetwork& net);

    std::span<const Entry> successors(NodeId v) const {
        return {out.data() + out_offset[v], out.data() + out_offset[v + 1]};
    }
    std::span<const Entry> predecessors(NodeId v) const {
        return {in.data() + in_offset[v], in.data() + in_offset[v + 1]};
    }
};

TrendNetwork build_network(std::string trend_id, std::span<const RetweetEvent> events);
TrendNetwork build_network(std::string trend_id, std::span<const RetweetRecord> records);

// Removes, in a single pass, every node that is never retweeted and retweets
// exactly one distinct user, remembering that user. A network that has
// already been pruned is returned unchanged.
TrendNetwork prune_leaves(const TrendNetwork& net);

}  // namespace rtpol
