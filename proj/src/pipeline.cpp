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

#include "rtpol/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rtpol/actors.hpp"
#include "rtpol/alignment.hpp"
#include "rtpol/csv.hpp"
#include "rtpol/layout.hpp"
#include "rtpol/network.hpp"
#include "rtpol/records.hpp"
#include "rtpol/sbm.hpp"
#include "rtpol/similarity.hpp"
#include "rtpol/svg.hpp"

namespace fs = std::filesystem;

namespace rtpol {

fs::path PipelineConfig::input_path() const { return input.empty() ? out_dir / "synth_records.jsonl" : input; }

void PipelineConfig::validate() const {
    if (!(silhouette_threshold >= -1.0 && silhouette_threshold <= 1.0)) {
        throw std::invalid_argument("silhouette_threshold must be in [-1, 1]");
    }
    if (sbm_runs < 1) throw std::invalid_argument("sbm_runs must be at least 1");
    if (power_user_k < 1) throw std::invalid_argument("power_user_k must be at least 1");
    if (regular_min_trends < 1) throw std::invalid_argument("regular_min_trends must be at least 1");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (layout_iterations < 0) throw std::invalid_argument("layout_iterations must be non-negative");
    if (tz_offset_minutes <= -24 * 60 || tz_offset_minutes >= 24 * 60) {
        throw std::invalid_argument("tz_offset_minutes must lie within one day");
    }
    if (out_dir.empty()) throw std::invalid_argument("out_dir is empty");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    T out{};
    in >> out;
    if (!in || !(in >> std::ws).eof()) throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
    return out;
}

std::vector<std::pair<std::string, TopicMode>> parse_topics(const std::string& v) {
    std::vector<std::pair<std::string, TopicMode>> out;
    std::stringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("synth.topics entries look like NAME:mode");
        out.emplace_back(trim(item.substr(0, colon)), parse_topic_mode(trim(item.substr(colon + 1))));
    }
    if (out.empty()) throw std::invalid_argument("synth.topics is empty");
    return out;
}

}  // namespace

void apply_setting(PipelineConfig& c, const std::string& key, const std::string& value) {
    auto& s = c.synth;
    if (key == "input") c.input = value;
    else if (key == "topics") c.topics = value;
    else if (key == "accounts") c.accounts = value;
    else if (key == "tweets") c.tweets = value;
    else if (key == "overrides") c.overrides = value;
    else if (key == "anchors") c.anchors = value;
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "min_network_size") c.min_network_size = parse_number<std::size_t>(key, value);
    else if (key == "silhouette_threshold") c.silhouette_threshold = parse_number<double>(key, value);
    else if (key == "sbm_runs") c.sbm_runs = parse_number<int>(key, value);
    else if (key == "power_user_k") c.power_user_k = parse_number<std::size_t>(key, value);
    else if (key == "regular_min_trends") c.regular_min_trends = parse_number<std::int64_t>(key, value);
    else if (key == "regular_sample") c.regular_sample = parse_number<std::size_t>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "threads") c.threads = parse_number<int>(key, value);
    else if (key == "tz_offset_minutes") c.tz_offset_minutes = parse_number<int>(key, value);
    else if (key == "halved_topic_membership") c.halved_topic_membership = parse_bool(value);
    else if (key == "layout_iterations") c.layout_iterations = parse_number<int>(key, value);
    else if (key == "synth.topics") s.topics = parse_topics(value);
    else if (key == "synth.trends_per_topic") s.trends_per_topic = parse_number<int>(key, value);
    else if (key == "synth.n_influencers") s.n_influencers = parse_number<int>(key, value);
    else if (key == "synth.n_multipliers") s.n_multipliers = parse_number<int>(key, value);
    else if (key == "synth.n_regular") s.n_regular = parse_number<int>(key, value);
    else if (key == "synth.camp_split") s.camp_split = parse_number<double>(key, value);
    else if (key == "synth.p_within") s.p_within = parse_number<double>(key, value);
    else if (key == "synth.p_cross") s.p_cross = parse_number<double>(key, value);
    else if (key == "synth.degree_exponent") s.degree_exponent = parse_number<double>(key, value);
    else if (key == "synth.influencer_participation") s.influencer_participation = parse_number<double>(key, value);
    else if (key == "synth.multiplier_participation") s.multiplier_participation = parse_number<double>(key, value);
    else if (key == "synth.regular_participation") s.regular_participation = parse_number<double>(key, value);
    else if (key == "synth.influencer_retweets") s.influencer_retweets = parse_number<double>(key, value);
    else if (key == "synth.multiplier_retweets") s.multiplier_retweets = parse_number<double>(key, value);
    else if (key == "synth.regular_retweets") s.regular_retweets = parse_number<double>(key, value);
    else if (key == "synth.start_day") s.start_day = value;
    else throw std::invalid_argument("unknown setting '" + key + "'");
}

void apply_config_file(PipelineConfig& config, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names = {"ingest", "cluster", "align", "similarity",
                                                   "actors", "synth",   "report", "all"};
    return names;
}

namespace {

// --- shared plumbing -------------------------------------------------------

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t trend_seed(const PipelineConfig& c, const std::string& trend_id) {
    return derive_seed(c.seed, fnv1a(trend_id));
}

fs::path artifact(const PipelineConfig& c, const std::string& name) { return c.out_dir / name; }

csv::Table require(const PipelineConfig& c, const std::string& name, const std::string& stage) {
    const fs::path p = artifact(c, name);
    if (!fs::exists(p)) {
        throw StageError("missing " + p.string() + ": run `rtpol " + stage + "` first");
    }
    return csv::read_table(p);
}

void prepare_out_dir(const PipelineConfig& c) { fs::create_directories(c.out_dir); }

std::string fmt(double v) { return csv::format_double(v); }

std::string fmt(const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); }

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct ManifestRow {
    std::string trend_id;
    std::string phrase;
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::string topic;
};

std::vector<ManifestRow> load_manifest(const PipelineConfig& c) {
    const auto t = require(c, "manifest.csv", "ingest");
    const auto ci = t.column("trend_id"), cp = t.column("phrase"), cn = t.column("n_nodes"),
               ce = t.column("n_edges"), ct = t.column("topic");
    std::vector<ManifestRow> out;
    for (const auto& r : t.rows) {
        out.push_back({r[ci], r[cp], std::stoul(r[cn]), std::stoul(r[ce]), r[ct]});
    }
    return out;
}

std::vector<TrendRetweet> load_retweets(const PipelineConfig& c) {
    const auto t = require(c, "records.csv", "ingest");
    const auto ci = t.column("trend_id"), cf = t.column("retweeter"), ct = t.column("retweeted"),
               cs = t.column("timestamp"), cl = t.column("label");
    std::vector<TrendRetweet> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) out.push_back({r[ci], r[cf], r[ct], std::stoll(r[cs]), r[cl]});
    return out;
}

struct VerdictRow {
    std::string trend_id;
    Verdict verdict = Verdict::one_block;
};

std::vector<VerdictRow> load_verdicts(const PipelineConfig& c) {
    const auto t = require(c, "verdicts.csv", "cluster");
    const auto ci = t.column("trend_id"), cv = t.column("verdict");
    std::vector<VerdictRow> out;
    for (const auto& r : t.rows) out.push_back({r[ci], parse_verdict(r[cv])});
    return out;
}

// Cluster vectors of every size-filtered trend, in verdict order. One-block
// trends give empty vectors.
std::vector<ClusterVector> load_cluster_vectors(const PipelineConfig& c) {
    const auto manifest = load_manifest(c);
    std::map<std::string, std::string> topic_of;
    for (const auto& m : manifest) topic_of[m.trend_id] = m.topic;
    const auto verdicts = load_verdicts(c);
    const auto parts = require(c, "partitions.csv", "cluster");
    const auto ci = parts.column("trend_id"), cu = parts.column("user_id"), cc = parts.column("cluster");
    std::map<std::string, std::map<std::string, int>> values;
    for (const auto& r : parts.rows) values[r[ci]][r[cu]] = std::stoi(r[cc]);

    std::vector<ClusterVector> out;
    for (const auto& v : verdicts) {
        ClusterVector cv;
        cv.trend_id = v.trend_id;
        auto t = topic_of.find(v.trend_id);
        cv.topic = t == topic_of.end() ? std::string(kUnlabeledTopic) : t->second;
        if (v.verdict == Verdict::two_blocks) {
            if (auto it = values.find(v.trend_id); it != values.end()) cv.values = std::move(it->second);
        }
        out.push_back(std::move(cv));
    }
    return out;
}

std::vector<std::string> analysed_topics(const std::vector<ClusterVector>& vectors) {
    std::set<std::string> topics;
    for (const auto& v : vectors) topics.insert(v.topic);
    return {topics.begin(), topics.end()};
}

std::map<std::string, std::string> read_key_values(const fs::path& path, const std::string& key_col,
                                                   const std::string& value_col) {
    const auto t = csv::read_table(path);
    const auto ck = t.column(key_col), cv = t.column(value_col);
    std::map<std::string, std::string> out;
    for (const auto& r : t.rows) out[r[ck]] = r[cv];
    return out;
}

// --- ingest ----------------------------------------------------------------

std::string kind_name(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::syntax: return "syntax";
        case ParseErrorKind::missing_field: return "missing_field";
        case ParseErrorKind::self_retweet: return "self_retweet";
        case ParseErrorKind::out_of_window: return "out_of_window";
    }
    return "syntax";
}

}  // namespace

void run_ingest(const PipelineConfig& c) {
    c.validate();
    const fs::path input = c.input_path();
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw StageError("cannot open input " + input.string() + ": set `input` or run `rtpol synth` first");
    }
    prepare_out_dir(c);
    const ParseResult parsed = parse_records(in);
    {
        csv::Writer w(artifact(c, "ingest_errors.csv"));
        w.row({"line", "kind", "message"});
        for (const auto& e : parsed.errors) w.row({std::to_string(e.line), kind_name(e.kind), e.message});
    }

    std::vector<PhraseDay> entries;
    {
        std::set<std::pair<std::string, Day>> seen;
        for (const auto& r : parsed.records) {
            if (seen.emplace(r.trend_phrase, r.trend_date).second) entries.push_back({r.trend_phrase, r.trend_date});
        }
    }
    const auto trends = merge_trends(entries);
    const TrendIndex index(trends);
    std::map<std::string, std::string> file_topics;
    if (!c.topics.empty()) file_topics = read_key_values(c.topics, "trend_id", "topic");

    std::map<std::string, std::vector<RetweetEvent>> events;
    std::map<std::string, std::map<std::string, std::size_t>> labels;
    {
        csv::Writer w(artifact(c, "records.csv"));
        w.row({"trend_id", "retweeter", "retweeted", "timestamp", "label"});
        for (const auto& r : parsed.records) {
            const std::string& id = *index.find(r.trend_phrase, r.trend_date);
            const std::string label = r.tweet_topic_label.value_or("");
            w.row({id, r.retweeter_id, r.retweeted_id, std::to_string(r.timestamp), label});
            events[id].push_back({r.retweeter_id, r.retweeted_id});
            if (!label.empty()) ++labels[id][label];
        }
    }

    csv::Writer w(artifact(c, "manifest.csv"));
    w.row({"trend_id", "phrase", "n_nodes", "n_edges", "topic"});
    for (const auto& t : trends) {
        const auto net = build_network(t.trend_id, events[t.trend_id]);
        std::string topic;
        if (auto it = file_topics.find(t.trend_id); it != file_topics.end() && !it->second.empty()) {
            topic = it->second;
        } else {
            topic = assign_trend_topic(labels[t.trend_id]);
        }
        w.row({t.trend_id, t.phrase, std::to_string(net.size()), std::to_string(net.edges.size()), topic});
    }
}

// --- cluster ---------------------------------------------------------------

void run_cluster(const PipelineConfig& c) {
    c.validate();
    const auto manifest = load_manifest(c);
    const auto retweets = load_retweets(c);
    std::map<std::string, int> runs_override;
    if (!c.overrides.empty()) {
        for (const auto& [id, runs] : read_key_values(c.overrides, "trend_id", "runs")) {
            runs_override[id] = parse_number<int>("runs", runs);
        }
    }

    std::vector<const ManifestRow*> todo;
    for (const auto& m : manifest) {
        if (m.n_nodes >= c.min_network_size) todo.push_back(&m);
    }
    std::map<std::string, std::vector<RetweetEvent>> events;
    for (const auto& r : retweets) events[r.trend_id].push_back({r.retweeter, r.retweeted});

    struct Result {
        PolarizationVerdict verdict;
        TrendNetwork core;
        Embedding2D layout;
    };
    std::vector<Result> results(todo.size());
    LayoutParams params;
    params.iterations = c.layout_iterations;

    parallel_for(todo.size(), c.threads, [&](std::size_t i) {
        const std::string& id = todo[i]->trend_id;
        const auto net = build_network(id, events[id]);
        Result& res = results[i];
        res.core = prune_leaves(net);
        const std::uint64_t base = trend_seed(c, id);
        if (res.core.size() < 2) {
            res.verdict.trend_id = id;
            res.verdict.dl_one = description_length(
                res.core, make_block_state(res.core, std::vector<std::uint8_t>(res.core.size(), 0), 1));
            res.verdict.dl_two = res.verdict.dl_one;
            res.layout.coordinates.assign(res.core.size(), Point{});
            return;
        }
        res.layout = force_layout(res.core, params, derive_seed(base, 0));
        SelectOptions options;
        auto ov = runs_override.find(id);
        options.seeds = standard_seeds(base, ov == runs_override.end() ? c.sbm_runs : ov->second);
        options.silhouette_threshold = c.silhouette_threshold;
        res.verdict = select_model(res.core, res.layout, options);
    });

    csv::Writer vw(artifact(c, "verdicts.csv"));
    vw.row({"trend_id", "verdict", "dl_one", "dl_two", "silhouette", "seed_best"});
    csv::Writer pw(artifact(c, "partitions.csv"));
    pw.row({"trend_id", "user_id", "cluster"});
    csv::Writer lw(artifact(c, "layout.csv"));
    lw.row({"trend_id", "user_id", "x", "y"});
    for (const auto& res : results) {
        const auto& v = res.verdict;
        vw.row({v.trend_id, to_string(v.verdict), fmt(v.dl_one), fmt(v.dl_two), fmt(v.silhouette),
                std::to_string(v.seed_best)});
        if (v.partition) {
            for (const auto& [user, cl] : *v.partition) pw.row({v.trend_id, user, std::to_string(cl)});
        }
        for (std::size_t k = 0; k < res.core.size(); ++k) {
            lw.row({v.trend_id, res.core.nodes[k], fmt(res.layout.coordinates[k].x), fmt(res.layout.coordinates[k].y)});
        }
    }
}

// --- align -----------------------------------------------------------------

namespace {

void write_membership(const fs::path& path, const std::vector<std::string>& users,
                      const std::vector<std::pair<std::string, std::map<std::string, Membership>>>& by_topic) {
    csv::Writer w(path);
    w.row({"user", "topic", "mu"});
    for (const auto& u : users) {
        for (const auto& [topic, scores] : by_topic) {
            auto it = scores.find(u);
            w.row({u, topic, it == scores.end() ? std::string() : fmt(it->second.mu)});
        }
    }
}

void write_issue_alignment(const fs::path& path, const IssueAlignmentMatrix& m) {
    csv::Writer w(path);
    w.row({"topic1", "topic2", "tau", "n"});
    for (auto a : m.leaf_order) {
        for (auto b : m.leaf_order) {
            const auto& cell = m.at(a, b);
            w.row({m.topics[a], m.topics[b], fmt(cell.tau), std::to_string(cell.n)});
        }
    }
}

PowerUsers power_users_of(const PipelineConfig& c, const std::vector<ActorProfile>& profiles) {
    return select_power_users(profiles, c.power_user_k);
}

}  // namespace

void run_align(const PipelineConfig& c) {
    c.validate();
    const auto retweets = load_retweets(c);
    const auto vectors = load_cluster_vectors(c);
    const auto profiles = profile_users(retweets);
    const auto power = power_users_of(c, profiles);
    const auto users = power.all();
    if (users.size() < 2) throw StageError("fewer than two power users; nothing to align");

    const AlignmentMatrix matrix = build_alignment_matrix(vectors, users);
    {
        csv::Writer w(artifact(c, "user_alignment.csv"));
        w.row({"i", "j", "alpha", "m"});
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            for (std::size_t j = i + 1; j < matrix.size(); ++j) {
                if (matrix.support(i, j) == 0) continue;
                w.row({matrix.users()[i], matrix.users()[j], fmt(matrix.alpha(i, j)), std::to_string(matrix.support(i, j))});
            }
        }
    }

    std::map<std::string, Camp> anchors;
    if (!c.anchors.empty()) {
        for (const auto& [u, camp] : read_key_values(c.anchors, "user", "camp")) anchors[u] = parse_camp(camp);
    }
    CampAssignment camps;
    try {
        camps = extract_camps(matrix, anchors);
    } catch (const std::invalid_argument& e) {
        throw StageError(std::string("camp extraction failed: ") + e.what());
    }
    std::vector<std::string> ordered;
    for (auto i : camps.leaf_order) ordered.push_back(matrix.users()[i]);
    {
        csv::Writer w(artifact(c, "camps.csv"));
        w.row({"user", "camp"});
        for (const auto& u : ordered) w.row({u, std::string(1, to_char(camps.camp.at(u)))});
    }

    const auto topics = analysed_topics(vectors);
    auto memberships = [&](const std::vector<std::string>& who) {
        std::vector<std::pair<std::string, std::map<std::string, Membership>>> rows;
        rows.emplace_back("ALL", membership_scores(vectors, camps, who));
        std::map<std::string, std::map<std::string, Membership>> by_topic;
        for (const auto& t : topics) {
            auto scores = membership_scores(vectors, camps, who, t, c.halved_topic_membership);
            rows.emplace_back(t, scores);
            by_topic.emplace(t, std::move(scores));
        }
        return std::make_pair(rows, issue_alignment_matrix(by_topic));
    };

    const auto [power_rows, power_tau] = memberships(ordered);
    write_membership(artifact(c, "membership.csv"), ordered, power_rows);
    write_issue_alignment(artifact(c, "issue_alignment.csv"), power_tau);

    const std::set<std::string> excluded(users.begin(), users.end());
    const auto regular =
        sample_regular_users(profiles, excluded, c.regular_min_trends, c.regular_sample, derive_seed(c.seed, 7));
    const auto [regular_rows, regular_tau] = memberships(regular);
    write_membership(artifact(c, "membership_regular.csv"), regular, regular_rows);
    write_issue_alignment(artifact(c, "issue_alignment_regular.csv"), regular_tau);
}

// --- similarity ------------------------------------------------------------

void run_similarity(const PipelineConfig& c) {
    c.validate();
    const auto vectors = load_cluster_vectors(c);
    const auto topics = analysed_topics(vectors);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < topics.size(); ++a) {
        for (std::size_t b = 0; b < topics.size(); ++b) pairs.emplace_back(a, b);
    }
    std::vector<TopicPairSimilarity> results(pairs.size());
    parallel_for(pairs.size(), c.threads, [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        if (b < a) return;
        results[k] = topic_pair_similarity(vectors, topics[a], topics[b]);
    });
    csv::Writer w(artifact(c, "similarity.csv"));
    w.row({"topic1", "topic2", "mean_anmi", "mean_ari", "n_pairs"});
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [a, b] = pairs[k];
        const auto& r = a <= b ? results[k] : results[b * topics.size() + a];
        w.row({topics[a], topics[b], fmt(r.mean_anmi), fmt(r.mean_ari), std::to_string(r.n_pairs)});
    }
}

// --- actors ----------------------------------------------------------------

void run_actors(const PipelineConfig& c) {
    c.validate();
    const auto retweets = load_retweets(c);
    auto profiles = profile_users(retweets);
    if (!c.accounts.empty()) attach_account_metadata(profiles, csv::read_table(c.accounts));
    const auto power = power_users_of(c, profiles);
    const std::set<std::string> influencers(power.influencers.begin(), power.influencers.end());
    const std::set<std::string> multipliers(power.multipliers.begin(), power.multipliers.end());
    auto group_of = [&](const std::string& u) -> std::string {
        const bool i = influencers.contains(u), m = multipliers.contains(u);
        if (i && m) return "both";
        if (i) return "influencer";
        if (m) return "multiplier";
        return "regular";
    };

    {
        csv::Writer w(artifact(c, "actors.csv"));
        w.row({"user_id", "in_degree", "out_degree", "n_trends", "group", "n_followers", "created_at", "status"});
        for (const auto& p : profiles) {
            w.row({p.user_id, std::to_string(p.in_degree), std::to_string(p.out_degree), std::to_string(p.n_trends),
                   group_of(p.user_id), p.n_followers ? std::to_string(*p.n_followers) : std::string(),
                   p.created_at ? format_day(*p.created_at) : std::string(), p.status.value_or("")});
        }
    }
    {
        csv::Writer w(artifact(c, "power_users.csv"));
        w.row({"key", "value"});
        w.row({"k", std::to_string(c.power_user_k)});
        w.row({"n_influencers", std::to_string(power.influencers.size())});
        w.row({"n_multipliers", std::to_string(power.multipliers.size())});
        w.row({"min_in_degree", std::to_string(power.in_threshold)});
        w.row({"min_out_degree", std::to_string(power.out_threshold)});
        w.row({"overlap", std::to_string(power.overlap)});
    }

    auto write_ccdf = [&](const std::string& name, auto value_of) {
        csv::Writer w(artifact(c, name));
        w.row({"group", "value", "ccdf"});
        for (const std::string group : {"influencer", "multiplier", "regular"}) {
            std::vector<double> values;
            for (const auto& p : profiles) {
                const auto g = group_of(p.user_id);
                if (g != group && !(g == "both" && group != "regular")) continue;
                if (auto v = value_of(p)) values.push_back(*v);
            }
            for (const auto& [v, f] : ccdf(values)) w.row({group, fmt(v), fmt(f)});
        }
    };
    write_ccdf("ccdf_trends.csv", [](const ActorProfile& p) -> std::optional<double> {
        return static_cast<double>(p.n_trends);
    });
    write_ccdf("ccdf_followers.csv", [](const ActorProfile& p) -> std::optional<double> {
        if (!p.n_followers) return std::nullopt;
        return static_cast<double>(*p.n_followers);
    });

    std::map<std::string, std::vector<std::int64_t>> times;
    for (const auto& r : retweets) {
        if (influencers.contains(r.retweeter) || multipliers.contains(r.retweeter)) {
            times[r.retweeter].push_back(r.timestamp);
        }
    }
    {
        csv::Writer fw(artifact(c, "flags.csv"));
        fw.row({"user_id", "group", "n_events", "flag"});
        csv::Writer cw(artifact(c, "circadian.csv"));
        cw.row({"user_id", "bin", "mean"});
        for (const auto& u : power.all()) {
            const auto& ts = times[u];
            fw.row({u, group_of(u), std::to_string(ts.size()), to_string(circadian_flags(ts))});
            if (ts.empty()) continue;
            const auto hist = circadian_histogram(ts, c.tz_offset_minutes);
            for (std::size_t b = 0; b < hist.size(); ++b) cw.row({u, std::to_string(b), fmt(hist[b])});
        }
    }

    csv::Writer w(artifact(c, "creation.csv"));
    w.row({"camp", "max_accounts_same_day"});
    if (!c.accounts.empty()) {
        const auto camps = require(c, "camps.csv", "align");
        std::map<std::string, std::string> camp_of;
        const auto cu = camps.column("user"), cc = camps.column("camp");
        for (const auto& r : camps.rows) camp_of[r[cu]] = r[cc];
        for (const auto& [camp, n] : creation_clustering(profiles, camp_of)) w.row({camp, std::to_string(n)});
    }
}

// --- synth -----------------------------------------------------------------

void run_synth(const PipelineConfig& c) {
    c.validate();
    prepare_out_dir(c);
    SynthConfig sc = c.synth;
    sc.seed = c.seed;
    const auto corpus = generate_corpus(sc);
    write_corpus(corpus, artifact(c, "synth_records.jsonl"), artifact(c, "ground_truth.csv"),
                 artifact(c, "synth_topics.csv"));
}

// --- report ----------------------------------------------------------------

namespace {

std::optional<double> opt_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

void topic_heatmap(const fs::path& path, const std::string& title, const csv::Table& t, const std::string& a_col,
                   const std::string& b_col, const std::string& v_col, double vmin, double vmax) {
    const auto ca = t.column(a_col), cb = t.column(b_col), cv = t.column(v_col);
    std::vector<std::string> order;
    std::map<std::string, std::size_t> pos;
    for (const auto& r : t.rows) {
        if (pos.emplace(r[ca], order.size()).second) order.push_back(r[ca]);
    }
    std::vector<std::optional<double>> values(order.size() * order.size());
    for (const auto& r : t.rows) values[pos[r[ca]] * order.size() + pos.at(r[cb])] = opt_number(r[cv]);
    svg::heatmap(path, title, order, order, values, vmin, vmax);
}

void membership_heatmap(const fs::path& path, const std::string& title, const csv::Table& t) {
    const auto cu = t.column("user"), ct = t.column("topic"), cm = t.column("mu");
    std::vector<std::string> users, topics;
    std::map<std::string, std::size_t> upos, tpos;
    for (const auto& r : t.rows) {
        if (upos.emplace(r[cu], users.size()).second) users.push_back(r[cu]);
        if (tpos.emplace(r[ct], topics.size()).second) topics.push_back(r[ct]);
    }
    std::vector<std::optional<double>> values(users.size() * topics.size());
    for (const auto& r : t.rows) values[upos[r[cu]] * topics.size() + tpos[r[ct]]] = opt_number(r[cm]);
    svg::heatmap(path, title, users, topics, values, -1.0, 1.0);
}

}  // namespace

void run_report(const PipelineConfig& c) {
    c.validate();
    const auto manifest = load_manifest(c);
    const auto verdicts = load_verdicts(c);
    const auto camps = require(c, "camps.csv", "align");
    const auto alignment = require(c, "user_alignment.csv", "align");
    const auto membership = require(c, "membership.csv", "align");
    const auto membership_regular = require(c, "membership_regular.csv", "align");
    const auto issue = require(c, "issue_alignment.csv", "align");
    const auto issue_regular = require(c, "issue_alignment_regular.csv", "align");
    const auto similarity = require(c, "similarity.csv", "similarity");
    const auto ccdf_trends = require(c, "ccdf_trends.csv", "actors");
    const auto ccdf_followers = require(c, "ccdf_followers.csv", "actors");
    const auto circadian = require(c, "circadian.csv", "actors");
    const auto actors = require(c, "actors.csv", "actors");
    const auto layout = require(c, "layout.csv", "cluster");
    const auto partitions = require(c, "partitions.csv", "cluster");
    const auto records = require(c, "records.csv", "ingest");

    // Table 1 analogue
    std::map<std::string, std::string> topic_of;
    for (const auto& m : manifest) topic_of[m.trend_id] = m.topic;
    struct Row {
        std::int64_t retweets = 0, originals = 0, trends = 0, filtered = 0, polarized = 0;
    };
    std::map<std::string, Row> rows;
    for (const auto& m : manifest) {
        auto& r = rows[m.topic];
        ++r.trends;
        if (m.n_nodes >= c.min_network_size) ++r.filtered;
    }
    for (const auto& v : verdicts) {
        if (v.verdict == Verdict::two_blocks) ++rows[topic_of[v.trend_id]].polarized;
    }
    const auto rc = records.column("trend_id");
    for (const auto& r : records.rows) ++rows[topic_of[r[rc]]].retweets;
    if (!c.tweets.empty()) {
        const auto tweets = csv::read_table(c.tweets);
        const auto tc = tweets.column("trend_id");
        for (const auto& r : tweets.rows) {
            auto it = topic_of.find(r[tc]);
            if (it != topic_of.end()) ++rows[it->second].originals;
        }
    }
    {
        csv::Writer w(artifact(c, "table1.csv"));
        w.row({"topic", "N_tweets", "Retweet share", "N_trends",
               "N_trends with |V| \xe2\x89\xa5 " + std::to_string(c.min_network_size), "Polarized trends share"});
        for (const auto& [topic, r] : rows) {
            const std::int64_t total = r.retweets + r.originals;
            w.row({topic, std::to_string(total),
                   !c.tweets.empty() && total > 0 ? fmt(static_cast<double>(r.retweets) / static_cast<double>(total))
                                                        : std::string(),
                   std::to_string(r.trends), std::to_string(r.filtered),
                   r.filtered > 0 ? fmt(static_cast<double>(r.polarized) / static_cast<double>(r.filtered))
                                  : std::string()});
        }
    }

    // user alignment heatmap, camps order, thinned to keep the file readable
    {
        const auto cu = camps.column("user");
        std::vector<std::string> users;
        const std::size_t stride = std::max<std::size_t>(1, (camps.rows.size() + 399) / 400);
        for (std::size_t i = 0; i < camps.rows.size(); i += stride) users.push_back(camps.rows[i][cu]);
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < users.size(); ++i) pos[users[i]] = i;
        std::vector<std::optional<double>> values(users.size() * users.size());
        for (std::size_t i = 0; i < users.size(); ++i) values[i * users.size() + i] = 1.0;
        const auto ci = alignment.column("i"), cj = alignment.column("j"), ca = alignment.column("alpha");
        for (const auto& r : alignment.rows) {
            auto a = pos.find(r[ci]), b = pos.find(r[cj]);
            if (a == pos.end() || b == pos.end()) continue;
            const auto v = opt_number(r[ca]);
            values[a->second * users.size() + b->second] = v;
            values[b->second * users.size() + a->second] = v;
        }
        svg::heatmap(artifact(c, "user_alignment.svg"), "User alignment", users, users, values, -1.0, 1.0);
    }
    membership_heatmap(artifact(c, "membership.svg"), "Membership by topic", membership);
    membership_heatmap(artifact(c, "membership_regular.svg"), "Membership by topic, regular users",
                       membership_regular);
    topic_heatmap(artifact(c, "issue_alignment.svg"), "Issue alignment", issue, "topic1", "topic2", "tau", -1.0, 1.0);
    topic_heatmap(artifact(c, "issue_alignment_regular.svg"), "Issue alignment, regular users", issue_regular,
                  "topic1", "topic2", "tau", -1.0, 1.0);
    topic_heatmap(artifact(c, "similarity_anmi.svg"), "Mean ANMI", similarity, "topic1", "topic2", "mean_anmi", -1.0,
                  1.0);
    topic_heatmap(artifact(c, "similarity_ari.svg"), "Mean ARI", similarity, "topic1", "topic2", "mean_ari", -1.0,
                  1.0);

    auto ccdf_plot = [&](const csv::Table& t, const std::string& name, const std::string& title) {
        const auto cg = t.column("group"), cv = t.column("value"), cf = t.column("ccdf");
        std::map<std::string, svg::Series> series;
        for (const auto& r : t.rows) {
            auto& s = series[r[cg]];
            s.name = r[cg];
            s.points.emplace_back(std::stod(r[cv]), std::stod(r[cf]));
        }
        std::vector<svg::Series> list;
        for (auto& [_, s] : series) list.push_back(std::move(s));
        svg::lines(artifact(c, name), title, list, true, true, true);
    };
    ccdf_plot(ccdf_trends, "ccdf_trends.svg", "CCDF of trends per user");
    ccdf_plot(ccdf_followers, "ccdf_followers.svg", "CCDF of followers");

    {
        std::map<std::string, std::string> group;
        const auto ca = actors.column("user_id"), cg = actors.column("group");
        for (const auto& r : actors.rows) group[r[ca]] = r[cg];
        std::map<std::string, std::vector<double>> sums;
        std::map<std::string, std::set<std::string>> members;
        const auto cu = circadian.column("user_id"), cb = circadian.column("bin"), cm = circadian.column("mean");
        for (const auto& r : circadian.rows) {
            const auto& g = group[r[cu]];
            auto& s = sums[g];
            s.resize(kCircadianBins, 0.0);
            s[std::stoul(r[cb])] += std::stod(r[cm]);
            members[g].insert(r[cu]);
        }
        std::vector<svg::Series> list;
        for (const auto& [g, s] : sums) {
            svg::Series series{g, {}};
            for (std::size_t b = 0; b < s.size(); ++b) {
                series.points.emplace_back(0.5 * static_cast<double>(b), s[b] / static_cast<double>(members[g].size()));
            }
            list.push_back(std::move(series));
        }
        svg::lines(artifact(c, "circadian.svg"), "Mean retweets per half-hour (hour of day)", list, false, false);
    }

    // layouts of the first few polarized trends
    {
        std::map<std::string, std::map<std::string, int>> cluster;
        const auto pt = partitions.column("trend_id"), pu = partitions.column("user_id"),
                   pc = partitions.column("cluster");
        for (const auto& r : partitions.rows) cluster[r[pt]][r[pu]] = std::stoi(r[pc]);
        std::map<std::string, std::pair<std::vector<Point>, std::vector<int>>> points;
        const auto lt = layout.column("trend_id"), lu = layout.column("user_id"), lx = layout.column("x"),
                   ly = layout.column("y");
        for (const auto& r : layout.rows) {
            auto it = cluster.find(r[lt]);
            if (it == cluster.end()) continue;
            if (points.size() >= 4 && !points.contains(r[lt])) continue;
            auto& [pts, labels] = points[r[lt]];
            pts.push_back({std::stod(r[lx]), std::stod(r[ly])});
            auto u = it->second.find(r[lu]);
            labels.push_back(u == it->second.end() ? 0 : u->second);
        }
        std::size_t k = 0;
        for (const auto& [trend, pl] : points) {
            svg::scatter(artifact(c, "layout_" + std::to_string(k++) + ".svg"), trend, pl.first, pl.second);
        }
    }
}

void run_all(const PipelineConfig& c) {
    run_ingest(c);
    run_cluster(c);
    run_align(c);
    run_similarity(c);
    run_actors(c);
    run_report(c);
}

void run_stage(const std::string& stage, const PipelineConfig& c) {
    if (stage == "ingest") return run_ingest(c);
    if (stage == "cluster") return run_cluster(c);
    if (stage == "align") return run_align(c);
    if (stage == "similarity") return run_similarity(c);
    if (stage == "actors") return run_actors(c);
    if (stage == "synth") return run_synth(c);
    if (stage == "report") return run_report(c);
    if (stage == "all") return run_all(c);
    throw std::invalid_argument("unknown stage '" + stage + "'");
}

}  // namespace rtpol
