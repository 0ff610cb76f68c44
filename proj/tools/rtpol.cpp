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

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rtpol/pipeline.hpp"

namespace {

// Settings exposed as --flags; dots and underscores become dashes.
const std::vector<std::pair<std::string, std::string>> kSettings = {
    {"input", "line-delimited retweet records"},
    {"topics", "trend_id,topic table"},
    {"accounts", "user_id,n_followers,created_at,status table"},
    {"tweets", "original tweets with a trend_id column"},
    {"overrides", "trend_id,runs table of per-trend inference runs"},
    {"anchors", "user,camp table orienting the camps"},
    {"out_dir", "artifact directory"},
    {"min_network_size", "smallest trend network analysed"},
    {"silhouette_threshold", "silhouette needed for a two-block verdict"},
    {"sbm_runs", "block-model inference runs per trend"},
    {"power_user_k", "influencers and multipliers kept per ranking"},
    {"regular_min_trends", "trends a regular user must appear in"},
    {"regular_sample", "regular users sampled"},
    {"seed", "master seed"},
    {"threads", "worker threads"},
    {"tz_offset_minutes", "offset added to timestamps for circadian profiles"},
    {"halved_topic_membership", "halve per-topic membership scores"},
    {"layout_iterations", "force layout iterations"},
    {"synth.topics", "synthetic topics as NAME:mode,..."},
    {"synth.trends_per_topic", "synthetic trends per topic"},
    {"synth.n_influencers", "synthetic influencers"},
    {"synth.n_multipliers", "synthetic multipliers"},
    {"synth.n_regular", "synthetic regular users"},
    {"synth.camp_split", "fraction of users in camp 0"},
    {"synth.p_within", "propensity to retweet the own camp"},
    {"synth.p_cross", "propensity to retweet the other camp"},
    {"synth.degree_exponent", "popularity tail exponent"},
    {"synth.start_day", "first synthetic trend day"},
};

std::string flag_name(std::string key) {
    for (auto& ch : key) {
        if (ch == '_' || ch == '.') ch = '-';
    }
    return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Retweet network polarization pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    app.add_option("-c,--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
    std::map<std::string, std::string> flags;
    for (const auto& [key, help] : kSettings) app.add_option(flag_name(key), flags[key], help);

    const std::map<std::string, std::string> descriptions = {
        {"ingest", "parse records, merge trends, write the manifest"},
        {"cluster", "layout and block-model verdict per trend"},
        {"align", "user alignment, camps, membership and issue alignment"},
        {"similarity", "partition similarity between topics"},
        {"actors", "power users, activity profiles and account metadata"},
        {"synth", "generate a synthetic corpus with planted camps"},
        {"report", "summary table and figures"},
        {"all", "ingest, cluster, align, similarity, actors and report"},
    };
    for (const auto& stage : rtpol::stage_names()) app.add_subcommand(stage, descriptions.at(stage));

    CLI11_PARSE(app, argc, argv);

    rtpol::PipelineConfig config;
    try {
        if (!config_file.empty()) rtpol::apply_config_file(config, config_file);
        if (const char* env = std::getenv("RTPOL_OUT"); env && *env) config.out_dir = env;
        for (const auto& [key, _] : kSettings) {
            if (app.count(flag_name(key)) > 0) rtpol::apply_setting(config, key, flags[key]);
        }
        config.validate();
        config.synth.validate();
    } catch (const std::exception& e) {
        std::cerr << "rtpol: configuration error: " << e.what() << '\n';
        return 2;
    }

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        rtpol::run_stage(stage, config);
    } catch (const rtpol::StageError& e) {
        std::cerr << "rtpol " << stage << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "rtpol " << stage << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
