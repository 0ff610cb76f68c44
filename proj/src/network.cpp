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

#include "rtpol/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtpol {

std::int64_t TrendNetwork::total_weight() const {
    std::int64_t w = 0;
    for (const auto& e : edges) w += e.weight;
    return w;
}

std::optional<NodeId> TrendNetwork::index_of(const std::string& user) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), user);
    if (it == nodes.end() || *it != user) return std::nullopt;
    return static_cast<NodeId>(it - nodes.begin());
}

Adjacency::Adjacency(const TrendNetwork& net) {
    const std::size_t n = net.size();
    out_offset.assign(n + 1, 0);
    in_offset.assign(n + 1, 0);
    out_degree.assign(n, 0);
    in_degree.assign(n, 0);
    for (const auto& e : net.edges) {
        ++out_offset[e.source + 1];
        ++in_offset[e.target + 1];
        out_degree[e.source] += e.weight;
        in_degree[e.target] += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_offset[i + 1] += out_offset[i];
        in_offset[i + 1] += in_offset[i];
    }
    out.resize(net.edges.size());
    in.resize(net.edges.size());
    auto out_pos = out_offset;
    auto in_pos = in_offset;
    for (const auto& e : net.edges) {
        out[out_pos[e.source]++] = {e.target, e.weight};
        in[in_pos[e.target]++] = {e.source, e.weight};
    }
}

TrendNetwork build_network(std::string trend_id, std::span<const RetweetEvent> events) {
    TrendNetwork net;
    net.trend_id = std::move(trend_id);
    net.nodes.reserve(events.size() * 2);
    for (const auto& ev : events) {
        if (ev.retweeter == ev.retweeted) throw std::invalid_argument("self-retweet in network input");
        net.nodes.push_back(ev.retweeter);
        net.nodes.push_back(ev.retweeted);
    }
    std::sort(net.nodes.begin(), net.nodes.end());
    net.nodes.erase(std::unique(net.nodes.begin(), net.nodes.end()), net.nodes.end());

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(events.size());
    for (const auto& ev : events) pairs.emplace_back(*net.index_of(ev.retweeter), *net.index_of(ev.retweeted));
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [s, t] : pairs) {
        if (!net.edges.empty() && net.edges.back().source == s && net.edges.back().target == t) {
            ++net.edges.back().weight;
        } else {
            net.edges.push_back({s, t, 1});
        }
    }
    return net;
}

TrendNetwork build_network(std::string trend_id, std::span<const RetweetRecord> records) {
    std::vector<RetweetEvent> events;
    events.reserve(records.size());
    for (const auto& r : records) events.push_back({r.retweeter_id, r.retweeted_id});
    return build_network(std::move(trend_id), events);
}

TrendNetwork prune_leaves(const TrendNetwork& net) {
    if (net.pruned) return net;
    const Adjacency adj(net);
    const std::size_t n = net.size();
    std::vector<bool> leaf(n, false);
    for (NodeId v = 0; v < n; ++v) {
        leaf[v] = adj.in_degree[v] == 0 && adj.successors(v).size() == 1;
    }

    TrendNetwork core;
    core.trend_id = net.trend_id;
    core.pruned = true;
    core.pruned_leaves = net.pruned_leaves;
    std::vector<NodeId> remap(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (leaf[v]) {
            core.pruned_leaves.emplace(net.nodes[v], net.nodes[adj.successors(v).front().node]);
        } else {
            remap[v] = static_cast<NodeId>(core.nodes.size());
            core.nodes.push_back(net.nodes[v]);
        }
    }
    for (const auto& e : net.edges) {
        if (leaf[e.source] || leaf[e.target]) continue;
        core.edges.push_back({remap[e.source], remap[e.target], e.weight});
    }
    return core;
}

}  // namespace rtpol
