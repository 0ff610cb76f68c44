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
#include <stdexcept>
#include <string>
#include <vector>

#include "rtpol/synth.hpp"

namespace rtpol {

struct PipelineConfig {
    std::filesystem::path input;      // line-delimited records; defaults to the synth output
    std::filesystem::path topics;     // optional trend_id,topic
    std::filesystem::path accounts;   // optional user_id,n_followers,created_at,status
    std::filesystem::path tweets;     // optional original tweets, one row per tweet with a trend_id column
    std::filesystem::path overrides;  // optional trend_id,runs
    std::filesystem::path anchors;    // optional user,camp
    std::filesystem::path out_dir = "rtpol_out";

    std::size_t min_network_size = 50;
    double silhouette_threshold = 0.4;
    int sbm_runs = 10;
    std::size_t power_user_k = 1000;
    std::int64_t regular_min_trends = 10;
    std::size_t regular_sample = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    int tz_offset_minutes = 0;
    bool halved_topic_membership = false;
    int layout_iterations = 1000;

    SynthConfig synth;

    std::filesystem::path input_path() const;
    void validate() const;
};

// key = value lines; '#' starts a comment. Unknown keys are errors.
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value);
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

// Raised when a stage cannot run; the message says what to do about it.
class StageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& stage_names();

// Runs one stage ("ingest", "cluster", "align", "similarity", "actors",
// "synth", "report") or the full chain ("all").
void run_stage(const std::string& stage, const PipelineConfig& config);

void run_ingest(const PipelineConfig& config);
void run_cluster(const PipelineConfig& config);
void run_align(const PipelineConfig& config);
void run_similarity(const PipelineConfig& config);
void run_actors(const PipelineConfig& config);
void run_synth(const PipelineConfig& config);
void run_report(const PipelineConfig& config);
void run_all(const PipelineConfig& config);

}  // namespace rtpol
