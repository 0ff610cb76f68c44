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
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtpol/network.hpp"
#include "rtpol/records.hpp"

namespace rtpol {

// How the camps of a topic's trends relate to the users' global camps.
//  aligned      every trend splits users along their global camp
//  anti_aligned every trend splits users along the opposite camp
//  independent  every trend splits users along a freshly drawn camp
//  unpolarized  retweet targets ignore camps altogether
enum class TopicMode { aligned, anti_aligned, independent, unpolarized };

std::string to_string(TopicMode mode);
TopicMode parse_topic_mode(const std::string& text);

struct SynthConfig {
    std::vector<std::pair<std::string, TopicMode>> topics = {{"A", TopicMode::aligned},
                                                             {"B", TopicMode::aligned},
                                                             {"C", TopicMode::independent},
                                                             {"D", TopicMode::unpolarized}};
    int trends_per_topic = 20;
    int n_influencers = 100;
    int n_multipliers = 100;
    int n_regular = 1800;
    double camp_split = 0.5;  // fraction of each role in camp 0
    double p_within = 0.95;   // propensity to retweet the own camp
    double p_cross = 0.05;    // propensity to retweet the other camp
    double degree_exponent = 2.5;
    double influencer_participation = 0.6;
    double multiplier_participation = 0.5;
    double regular_participation = 0.04;  // scaled by each regular's heavy-tailed activity
    double influencer_retweets = 0.5;     // mean retweets per trend and role
    double multiplier_retweets = 10.0;
    double regular_retweets = 2.0;
    std::string start_day = "2021-01-01";
    std::uint64_t seed = 1;

    // Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

enum class Role { influencer, multiplier, regular };

std::string to_string(Role role);

struct SynthUser {
    std::string id;
    Role role = Role::regular;
    int camp = 0;  // 0 or 1
    double activity = 1.0;
    double popularity = 1.0;
};

struct SynthTrend {
    std::string phrase;
    Day day;
    std::string topic;
    TopicMode mode = TopicMode::aligned;
};

struct SynthCorpus {
    std::vector<RetweetRecord> records;
    std::vector<SynthUser> users;
    std::vector<SynthTrend> trends;
};

// Deterministic for a given configuration.
SynthCorpus generate_corpus(const SynthConfig& config);

// ground_truth.csv (user_id,role,camp), topics.csv (trend_id,topic) and the
// records as line-delimited JSON.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& records,
                  const std::filesystem::path& ground_truth, const std::filesystem::path& topics);

struct SingleNetworkConfig {
    std::vector<std::size_t> camp_sizes = {250, 250};
    double p_within = 0.05;
    double p_cross = 0.001;
    double degree_exponent = 2.5;  // <= 0: homogeneous propensities
    std::size_t bridges = 0;       // extra edges from camp 0 to camp 1
    std::uint64_t seed = 1;
};

struct PlantedNetwork {
    TrendNetwork network;
    std::map<std::string, int> camp;  // node -> planted camp index
};

// Independent directed edges with P(i -> j) = min(1, p * theta_i * theta_j)
// where p depends on whether i and j share a camp and theta is heavy tailed
// with mean 1 inside each camp. Nodes without any edge are dropped.
PlantedNetwork generate_single_network(const SingleNetworkConfig& config);

// Structureless directed multigraph with heavy-tailed in and out propensities:
// every edge draws its endpoints independently. Self-loops are discarded and
// repeated pairs become weights.
PlantedNetwork generate_configuration_network(std::size_t n, double mean_degree, double degree_exponent,
                                              std::uint64_t seed);

// Heavy-tailed draw >= 1 with density ~ x^-exponent. Requires exponent > 1.
template <class Rng>
double pareto_draw(Rng& rng, double exponent);

// Deterministic seed for a sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace rtpol

#include <cmath>
#include <random>

template <class Rng>
double rtpol::pareto_draw(Rng& rng, double exponent) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return std::pow(1.0 - unif(rng), -1.0 / (exponent - 1.0));
}
