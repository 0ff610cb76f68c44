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
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtpol/csv.hpp"
#include "rtpol/records.hpp"

namespace rtpol {

struct ActorProfile {
    std::string user_id;
    std::int64_t in_degree = 0;   // times retweeted
    std::int64_t out_degree = 0;  // retweets made
    std::int64_t n_trends = 0;    // trends the user appears in, either side
    std::optional<std::int64_t> n_followers;
    std::optional<Day> created_at;
    std::optional<std::string> status;
};

// One profile per user, sorted by user id.
std::vector<ActorProfile> profile_users(std::span<const TrendRetweet> retweets);

// Fills follower counts, creation days and status from a table with columns
// user_id,n_followers,created_at,status (empty fields stay unset).
void attach_account_metadata(std::vector<ActorProfile>& profiles, const csv::Table& accounts);

struct PowerUsers {
    std::vector<std::string> influencers;  // sorted
    std::vector<std::string> multipliers;  // sorted
    std::int64_t in_threshold = 0;         // smallest in-degree among influencers
    std::int64_t out_threshold = 0;        // smallest out-degree among multipliers
    std::size_t overlap = 0;

    std::vector<std::string> all() const;  // union, sorted
};

// Top k by in-degree and top k by out-degree. Users tied with the k-th value
// are all kept; users with degree 0 never qualify.
PowerUsers select_power_users(std::span<const ActorProfile> profiles, std::size_t k);

// (value, fraction of values >= value) over the distinct values, ascending.
std::vector<std::pair<double, double>> ccdf(std::span<const double> values);

// Uniform sample without replacement of users with n_trends >= min_trends that
// are not power users; all of them when fewer than n qualify. Sorted output.
std::vector<std::string> sample_regular_users(std::span<const ActorProfile> profiles,
                                              const std::set<std::string>& excluded, std::int64_t min_trends,
                                              std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kCircadianBins = 48;
inline constexpr std::size_t kMinFlagEvents = 200;

// Mean events per half-hour of day over the days the user was active.
// `offset_minutes` shifts UTC to local time before binning.
std::array<double, kCircadianBins> circadian_histogram(std::span<const std::int64_t> timestamps,
                                                       int offset_minutes = 0);

enum class ActivityFlag { none, constant_activity, periodic_activity };

std::string to_string(ActivityFlag flag);

// Periodic: the minute-of-day event profile, with its 15-minute moving average
// removed, autocorrelates above 0.8 at a lag of 30, 60 or 120 minutes.
// Constant: the coefficient of variation of the 48 half-hour counts is below
// 0.2. Periodicity is checked first. Fewer than 200 events give none.
ActivityFlag circadian_flags(std::span<const std::int64_t> timestamps);

// Lag autocorrelation of the periodic high-passed minute profile.
double minute_profile_autocorrelation(std::span<const std::int64_t> timestamps, int lag_minutes);

// Largest number of accounts created on one calendar day, per camp label.
// Users without a creation day or without a camp are ignored.
std::map<std::string, std::int64_t> creation_clustering(std::span<const ActorProfile> profiles,
                                                        const std::map<std::string, std::string>& camp_of);

}  // namespace rtpol
