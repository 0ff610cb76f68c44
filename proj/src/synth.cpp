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

#include "rtpol/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "rtpol/csv.hpp"

namespace rtpol {

std::string to_string(TopicMode mode) {
    switch (mode) {
        case TopicMode::aligned: return "aligned";
        case TopicMode::anti_aligned: return "anti_aligned";
        case TopicMode::independent: return "independent";
        case TopicMode::unpolarized: return "unpolarized";
    }
    return "aligned";
}

TopicMode parse_topic_mode(const std::string& text) {
    if (text == "aligned") return TopicMode::aligned;
    if (text == "anti_aligned") return TopicMode::anti_aligned;
    if (text == "independent") return TopicMode::independent;
    if (text == "unpolarized") return TopicMode::unpolarized;
    throw std::invalid_argument("unknown topic mode '" + text + "'");
}

std::string to_string(Role role) {
    switch (role) {
        case Role::influencer: return "influencer";
        case Role::multiplier: return "multiplier";
        case Role::regular: return "regular";
    }
    return "regular";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void SynthConfig::validate() const {
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("synth: ") + name + " must be in [0,1]");
    };
    prob(camp_split, "camp_split");
    prob(p_within, "p_within");
    prob(p_cross, "p_cross");
    prob(influencer_participation, "influencer_participation");
    prob(multiplier_participation, "multiplier_participation");
    prob(regular_participation, "regular_participation");
    if (n_influencers <= 0) throw std::invalid_argument("synth: at least one influencer is required");
    if (n_multipliers < 0 || n_regular < 0 || trends_per_topic < 0) {
        throw std::invalid_argument("synth: counts must be non-negative");
    }
    if (topics.empty()) throw std::invalid_argument("synth: no topics");
    if (degree_exponent <= 1.0) throw std::invalid_argument("synth: degree_exponent must exceed 1");
    if (p_within + p_cross <= 0.0) throw std::invalid_argument("synth: p_within and p_cross are both zero");
    for (const auto& [name, mode] : topics) {
        if (mode != TopicMode::unpolarized && p_within <= p_cross) {
            throw std::invalid_argument("synth: polarized topic " + name + " needs p_within > p_cross");
        }
    }
    if (influencer_retweets < 0.0 || multiplier_retweets < 0.0 || regular_retweets < 1.0) {
        throw std::invalid_argument("synth: invalid retweet rates");
    }
    parse_day(start_day);
}

namespace {

std::string padded(char prefix, int i, int width) {
    std::string digits = std::to_string(i);
    if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return prefix + digits;
}

int digits(int n) {
    int d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

// index drawn proportionally to weights (all positive)
class WeightedPicker {
public:
    void reset() {
        items_.clear();
        cum_.clear();
    }
    void add(std::size_t item, double w) {
        items_.push_back(item);
        cum_.push_back((cum_.empty() ? 0.0 : cum_.back()) + w);
    }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    template <class Rng>
    std::size_t pick(Rng& rng) const {
        std::uniform_real_distribution<double> unif(0.0, cum_.back());
        const double u = unif(rng);
        auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        if (it == cum_.end()) --it;
        return items_[static_cast<std::size_t>(it - cum_.begin())];
    }

private:
    std::vector<std::size_t> items_;
    std::vector<double> cum_;
};

}  // namespace

SynthCorpus generate_corpus(const SynthConfig& config) {
    config.validate();
    SynthCorpus corpus;
    std::mt19937_64 rng(derive_seed(config.seed, 0));
    std::bernoulli_distribution camp0(config.camp_split);

    auto add_users = [&](char prefix, int count, Role role) {
        const int w = digits(std::max(count, 1));
        for (int i = 0; i < count; ++i) {
            SynthUser u;
            u.id = padded(prefix, i, w);
            u.role = role;
            u.camp = camp0(rng) ? 0 : 1;
            u.popularity = pareto_draw(rng, config.degree_exponent);
            u.activity = std::floor(pareto_draw(rng, config.degree_exponent));
            corpus.users.push_back(std::move(u));
        }
    };
    add_users('i', config.n_influencers, Role::influencer);
    add_users('m', config.n_multipliers, Role::multiplier);
    add_users('u', config.n_regular, Role::regular);

    const Day start = parse_day(config.start_day);
    const int n_trends = config.trends_per_topic * static_cast<int>(config.topics.size());
    const int tw = digits(std::max(n_trends, 1));
    for (int t = 0; t < n_trends; ++t) {
        const auto& [topic, mode] = config.topics[static_cast<std::size_t>(t % static_cast<int>(config.topics.size()))];
        SynthTrend trend;
        trend.topic = topic;
        trend.mode = mode;
        trend.phrase = "#" + topic + padded('t', t, tw).substr(1);
        trend.day = start + std::chrono::days{t};
        corpus.trends.push_back(trend);
    }

    std::vector<int> camp(corpus.users.size());
    std::vector<std::size_t> present;
    WeightedPicker pool[2], everyone;
    for (std::size_t t = 0; t < corpus.trends.size(); ++t) {
        const SynthTrend& trend = corpus.trends[t];
        std::mt19937_64 trng(derive_seed(config.seed, t + 1));
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        for (std::size_t u = 0; u < corpus.users.size(); ++u) {
            const int c = corpus.users[u].camp;
            switch (trend.mode) {
                case TopicMode::aligned:
                case TopicMode::unpolarized: camp[u] = c; break;
                case TopicMode::anti_aligned: camp[u] = 1 - c; break;
                case TopicMode::independent: camp[u] = unif(trng) < config.camp_split ? 0 : 1; break;
            }
        }

        present.clear();
        for (std::size_t u = 0; u < corpus.users.size(); ++u) {
            const auto& user = corpus.users[u];
            double p = 0.0;
            switch (user.role) {
                case Role::influencer: p = config.influencer_participation; break;
                case Role::multiplier: p = config.multiplier_participation; break;
                case Role::regular: p = std::min(1.0, config.regular_participation * user.activity); break;
            }
            if (unif(trng) < p) present.push_back(u);
        }
        pool[0].reset();
        pool[1].reset();
        everyone.reset();
        for (std::size_t u : present) {
            const auto& user = corpus.users[u];
            if (user.role != Role::influencer) continue;
            pool[camp[u]].add(u, user.popularity);
            everyone.add(u, user.popularity);
        }
        if (everyone.empty()) continue;

        const std::int64_t t0 = day_start_seconds(trend.day);
        std::uniform_int_distribution<std::int64_t> when(0, 2 * 86400 - 1);
        auto emit = [&](std::size_t from, std::size_t to) {
            RetweetRecord r;
            r.trend_phrase = trend.phrase;
            r.trend_date = trend.day;
            r.retweeter_id = corpus.users[from].id;
            r.retweeted_id = corpus.users[to].id;
            r.timestamp = t0 + when(trng);
            r.tweet_topic_label = trend.topic;
            corpus.records.push_back(std::move(r));
        };
        auto target_for = [&](std::size_t from) -> std::optional<std::size_t> {
            const WeightedPicker* source = &everyone;
            if (trend.mode != TopicMode::unpolarized) {
                const int own = camp[from];
                const double ws = config.p_within * static_cast<double>(pool[own].size());
                const double wo = config.p_cross * static_cast<double>(pool[1 - own].size());
                if (ws + wo <= 0.0) return std::nullopt;
                source = unif(trng) * (ws + wo) < ws ? &pool[own] : &pool[1 - own];
            }
            for (int attempt = 0; attempt < 8; ++attempt) {
                const std::size_t to = source->pick(trng);
                if (to != from) return to;
            }
            return std::nullopt;
        };

        for (std::size_t u : present) {
            const auto& user = corpus.users[u];
            std::int64_t count = 0;
            switch (user.role) {
                case Role::influencer: {
                    std::poisson_distribution<std::int64_t> pd(config.influencer_retweets);
                    count = pd(trng);
                    break;
                }
                case Role::multiplier: {
                    std::poisson_distribution<std::int64_t> pd(std::max(config.multiplier_retweets - 1.0, 0.0));
                    count = 1 + pd(trng);
                    break;
                }
                case Role::regular: {
                    std::poisson_distribution<std::int64_t> pd(config.regular_retweets - 1.0);
                    count = 1 + pd(trng);
                    break;
                }
            }
            for (std::int64_t k = 0; k < count; ++k) {
                std::optional<std::size_t> to;
                if (user.role == Role::influencer && trend.mode != TopicMode::unpolarized) {
                    // influencers amplify their own side
                    if (pool[camp[u]].size() > 1) to = pool[camp[u]].pick(trng);
                    if (to && *to == u) to.reset();
                } else {
                    to = target_for(u);
                }
                if (to) emit(u, *to);
            }
        }
    }
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& records,
                  const std::filesystem::path& ground_truth, const std::filesystem::path& topics) {
    {
        std::ofstream out(records, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + records.string());
        for (const auto& r : corpus.records) write_record(out, r);
    }
    {
        csv::Writer w(ground_truth);
        w.row({"user_id", "role", "camp"});
        for (const auto& u : corpus.users) w.row({u.id, to_string(u.role), std::to_string(u.camp)});
    }
    {
        csv::Writer w(topics);
        w.row({"trend_id", "topic"});
        for (const auto& t : corpus.trends) w.row({make_trend_id(t.phrase, t.day), t.topic});
    }
}

namespace {

std::vector<double> propensities(std::size_t n, double exponent, std::mt19937_64& rng) {
    std::vector<double> theta(n, 1.0);
    if (exponent <= 0.0 || n == 0) return theta;
    if (exponent <= 1.0) throw std::invalid_argument("degree_exponent must exceed 1 (or be <= 0)");
    for (auto& t : theta) t = std::floor(pareto_draw(rng, exponent));
    const double mean = std::accumulate(theta.begin(), theta.end(), 0.0) / static_cast<double>(n);
    for (auto& t : theta) t /= mean;
    return theta;
}

std::string node_name(std::size_t i, int width) { return padded('v', static_cast<int>(i), width); }

}  // namespace

PlantedNetwork generate_single_network(const SingleNetworkConfig& config) {
    if (!(config.p_within >= 0.0 && config.p_within <= 1.0 && config.p_cross >= 0.0 && config.p_cross <= 1.0)) {
        throw std::invalid_argument("generate_single_network: probabilities must be in [0,1]");
    }
    std::mt19937_64 rng(config.seed);
    std::vector<int> camp;
    std::vector<double> theta;
    for (std::size_t c = 0; c < config.camp_sizes.size(); ++c) {
        const auto t = propensities(config.camp_sizes[c], config.degree_exponent, rng);
        theta.insert(theta.end(), t.begin(), t.end());
        camp.insert(camp.end(), config.camp_sizes[c], static_cast<int>(c));
    }
    const std::size_t n = theta.size();
    const int width = digits(static_cast<int>(std::max<std::size_t>(n, 1)));

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<RetweetEvent> events;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double p = std::min(1.0, (camp[i] == camp[j] ? config.p_within : config.p_cross) * theta[i] * theta[j]);
            if (p > 0.0 && unif(rng) < p) events.push_back({node_name(i, width), node_name(j, width)});
        }
    }
    if (config.bridges > 0) {
        if (config.camp_sizes.size() < 2 || config.camp_sizes[0] == 0 || config.camp_sizes[1] == 0) {
            throw std::invalid_argument("generate_single_network: bridges need two nonempty camps");
        }
        const std::size_t a = config.camp_sizes[0], b = config.camp_sizes[1];
        for (std::size_t k = 0; k < config.bridges; ++k) {
            events.push_back({node_name(k % a, width), node_name(a + k % b, width)});
        }
    }
    PlantedNetwork out;
    out.network = build_network("planted", events);
    for (const auto& v : out.network.nodes) out.camp[v] = camp[static_cast<std::size_t>(std::stoul(v.substr(1)))];
    return out;
}

PlantedNetwork generate_configuration_network(std::size_t n, double mean_degree, double degree_exponent,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto out_w = propensities(n, degree_exponent, rng);
    const auto in_w = propensities(n, degree_exponent, rng);
    WeightedPicker src, dst;
    for (std::size_t i = 0; i < n; ++i) {
        src.add(i, out_w[i]);
        dst.add(i, in_w[i]);
    }
    const int width = digits(static_cast<int>(std::max<std::size_t>(n, 1)));
    const auto m = static_cast<std::size_t>(std::llround(mean_degree * static_cast<double>(n)));
    std::vector<RetweetEvent> events;
    events.reserve(m);
    for (std::size_t e = 0; e < m; ++e) {
        const std::size_t i = src.pick(rng);
        const std::size_t j = dst.pick(rng);
        if (i != j) events.push_back({node_name(i, width), node_name(j, width)});
    }
    PlantedNetwork out;
    out.network = build_network("configuration", events);
    for (const auto& v : out.network.nodes) out.camp[v] = 0;
    return out;
}

}  // namespace rtpol
