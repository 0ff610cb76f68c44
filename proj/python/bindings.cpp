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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rtpol/actors.hpp"
#include "rtpol/alignment.hpp"
#include "rtpol/layout.hpp"
#include "rtpol/network.hpp"
#include "rtpol/pipeline.hpp"
#include "rtpol/sbm.hpp"
#include "rtpol/similarity.hpp"
#include "rtpol/synth.hpp"

namespace py = pybind11;
using namespace rtpol;

namespace {

TrendNetwork network_from(const std::vector<std::pair<std::string, std::string>>& retweets, std::string trend_id) {
    std::vector<RetweetEvent> events;
    events.reserve(retweets.size());
    for (const auto& [from, to] : retweets) events.push_back({from, to});
    return build_network(std::move(trend_id), events);
}

std::vector<std::uint8_t> assignment_from(const TrendNetwork& net, const std::map<std::string, int>& blocks) {
    std::vector<std::uint8_t> out;
    out.reserve(net.size());
    for (const auto& u : net.nodes) {
        auto it = blocks.find(u);
        if (it == blocks.end()) throw std::invalid_argument("no block for node " + u);
        if (it->second != 0 && it->second != 1) throw std::invalid_argument("blocks must be 0 or 1");
        out.push_back(static_cast<std::uint8_t>(it->second));
    }
    return out;
}

std::map<std::string, int> blocks_of(const TrendNetwork& net, const BlockState& st) {
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < net.size(); ++i) out[net.nodes[i]] = st.assignment[i];
    return out;
}

std::vector<ClusterVector> vectors_from(const std::vector<std::map<std::string, int>>& values,
                                        const std::vector<std::string>& topics) {
    if (!topics.empty() && topics.size() != values.size()) throw std::invalid_argument("one topic per vector");
    std::vector<ClusterVector> out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        ClusterVector v;
        v.trend_id = std::to_string(k);
        v.topic = topics.empty() ? std::string() : topics[k];
        for (const auto& [u, c] : values[k]) {
            if (c != 0) v.values[u] = c;
        }
        out.push_back(std::move(v));
    }
    return out;
}

ContingencyTable table_of(const std::vector<int>& a, const std::vector<int>& b) { return contingency(a, b); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Retweet network polarization pipeline";

    py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

    py::class_<TrendNetwork>(m, "Network")
        .def(py::init([](const std::vector<std::pair<std::string, std::string>>& retweets, std::string trend_id) {
                 return network_from(retweets, std::move(trend_id));
             }),
             py::arg("retweets"), py::arg("trend_id") = "")
        .def_readonly("trend_id", &TrendNetwork::trend_id)
        .def_readonly("nodes", &TrendNetwork::nodes)
        .def_property_readonly("edges",
                               [](const TrendNetwork& n) {
                                   std::vector<std::tuple<std::string, std::string, std::int64_t>> out;
                                   for (const auto& e : n.edges) out.emplace_back(n.nodes[e.source], n.nodes[e.target], e.weight);
                                   return out;
                               })
        .def_readonly("pruned_leaves", &TrendNetwork::pruned_leaves)
        .def("total_weight", &TrendNetwork::total_weight)
        .def("__len__", &TrendNetwork::size)
        .def("prune_leaves", [](const TrendNetwork& n) { return prune_leaves(n); });

    m.def(
        "description_length",
        [](const TrendNetwork& net, const std::map<std::string, int>& blocks) {
            auto a = assignment_from(net, blocks);
            const bool two = std::any_of(a.begin(), a.end(), [](auto b) { return b != 0; });
            return description_length(net, make_block_state(net, std::move(a), two ? 2 : 1));
        },
        py::arg("network"), py::arg("blocks"), "Description length in nats of a 0/1 block assignment.");
    m.def(
        "infer_blocks",
        [](const TrendNetwork& net, std::uint64_t seed) { return blocks_of(net, infer_blocks(net, 2, seed)); },
        py::arg("network"), py::arg("seed"));
    m.def(
        "brute_force_min_dl", [](const TrendNetwork& net) { return blocks_of(net, brute_force_min_dl(net)); },
        py::arg("network"));
    m.def("standard_seeds", &standard_seeds, py::arg("base"), py::arg("runs"));

    m.def(
        "force_layout",
        [](const TrendNetwork& net, std::uint64_t seed, int iterations) {
            LayoutParams params;
            params.iterations = iterations;
            std::vector<std::pair<double, double>> out;
            for (const auto& p : force_layout(net, params, seed).coordinates) out.emplace_back(p.x, p.y);
            return out;
        },
        py::arg("network"), py::arg("seed") = 1, py::arg("iterations") = 1000);
    m.def(
        "silhouette_score",
        [](const std::vector<std::pair<double, double>>& points, const std::vector<int>& labels) {
            std::vector<Point> pts;
            for (const auto& [x, y] : points) pts.push_back({x, y});
            return silhouette_score(pts, labels);
        },
        py::arg("points"), py::arg("labels"));

    m.def(
        "select_model",
        [](const TrendNetwork& net, std::uint64_t seed, int runs, double threshold) {
            const auto core = prune_leaves(net);
            const auto layout = force_layout(core, {}, derive_seed(seed, 0));
            SelectOptions options;
            options.seeds = standard_seeds(seed, runs);
            options.silhouette_threshold = threshold;
            const auto v = select_model(core, layout, options);
            py::dict out;
            out["verdict"] = to_string(v.verdict);
            out["partition"] = v.partition;
            out["dl_one"] = v.dl_one;
            out["dl_two"] = v.dl_two;
            out["silhouette"] = v.silhouette;
            return out;
        },
        py::arg("network"), py::arg("seed") = 1, py::arg("runs") = 10, py::arg("silhouette_threshold") = 0.4,
        "Prunes leaves, lays out the core and picks one or two blocks.");

    m.def(
        "alignment_matrix",
        [](const std::vector<std::map<std::string, int>>& vectors, const std::vector<std::string>& users) {
            const auto vs = vectors_from(vectors, {});
            const auto matrix = build_alignment_matrix(vs, users);
            std::vector<std::vector<std::optional<double>>> alpha(matrix.size());
            for (std::size_t i = 0; i < matrix.size(); ++i) {
                for (std::size_t j = 0; j < matrix.size(); ++j) alpha[i].push_back(i == j ? std::optional<double>(1.0) : matrix.alpha(i, j));
            }
            return py::make_tuple(matrix.users(), alpha);
        },
        py::arg("vectors"), py::arg("users"),
        "Sorted users and their pairwise alignment; None where two users never meet.");
    m.def(
        "camps",
        [](const std::vector<std::map<std::string, int>>& vectors, const std::vector<std::string>& users) {
            const auto vs = vectors_from(vectors, {});
            const auto camps = extract_camps(build_alignment_matrix(vs, users));
            std::map<std::string, std::string> out;
            for (const auto& [u, c] : camps.camp) out[u] = std::string(1, to_char(c));
            return out;
        },
        py::arg("vectors"), py::arg("users"));
    m.def(
        "membership_scores",
        [](const std::vector<std::map<std::string, int>>& vectors, const std::vector<std::string>& topics,
           const std::vector<std::string>& users, std::optional<std::string> topic) {
            const auto vs = vectors_from(vectors, topics);
            const auto camps = extract_camps(build_alignment_matrix(vs, users));
            std::map<std::string, std::optional<double>> out;
            for (const auto& [u, s] : membership_scores(vs, camps, users, topic)) out[u] = s.mu;
            return out;
        },
        py::arg("vectors"), py::arg("topics"), py::arg("users"), py::arg("topic") = py::none());

    m.def(
        "similarity",
        [](const std::vector<int>& a, const std::vector<int>& b) {
            const auto s = similarity(table_of(a, b));
            py::dict out;
            out["nmi"] = s.nmi;
            out["anmi"] = s.anmi;
            out["rand"] = s.rand;
            out["ari"] = s.ari;
            return out;
        },
        py::arg("a"), py::arg("b"));
    m.def("adjusted_rand_index", [](const std::vector<int>& a, const std::vector<int>& b) {
        return adjusted_rand_index(table_of(a, b));
    });
    m.def("adjusted_nmi", [](const std::vector<int>& a, const std::vector<int>& b) { return adjusted_nmi(table_of(a, b)); });

    m.def(
        "power_users",
        [](const std::vector<std::pair<std::string, std::string>>& retweets, std::size_t k) {
            std::vector<TrendRetweet> rs;
            for (const auto& [from, to] : retweets) rs.push_back({"", from, to, 0, ""});
            const auto p = select_power_users(profile_users(rs), k);
            return py::make_tuple(p.influencers, p.multipliers);
        },
        py::arg("retweets"), py::arg("k"));

    m.def(
        "planted_network",
        [](std::size_t per_camp, double p_within, double p_cross, double exponent, std::uint64_t seed) {
            SingleNetworkConfig cfg;
            cfg.camp_sizes = {per_camp, per_camp};
            cfg.p_within = p_within;
            cfg.p_cross = p_cross;
            cfg.degree_exponent = exponent;
            cfg.seed = seed;
            auto p = generate_single_network(cfg);
            return py::make_tuple(std::move(p.network), std::move(p.camp));
        },
        py::arg("per_camp") = 250, py::arg("p_within") = 0.05, py::arg("p_cross") = 0.001,
        py::arg("degree_exponent") = 2.5, py::arg("seed") = 1);

    m.def(
        "run_stage",
        [](const std::string& stage, const std::filesystem::path& out_dir,
           const std::map<std::string, std::string>& settings) {
            PipelineConfig config;
            for (const auto& [k, v] : settings) apply_setting(config, k, v);
            config.out_dir = out_dir;
            py::gil_scoped_release release;
            run_stage(stage, config);
        },
        py::arg("stage"), py::arg("out_dir"), py::arg("settings") = std::map<std::string, std::string>{},
        "Runs one pipeline stage (or \"all\") with key = value settings.");
}
