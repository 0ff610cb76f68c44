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

#include "rtpol/actors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rtpol {

std::vector<ActorProfile> profile_users(std::span<const TrendRetweet> retweets) {
    std::map<std::string, ActorProfile> by_user;
    std::set<std::pair<std::string, std::string>> seen;  // (user, trend)
    auto touch = [&](const std::string& user, const std::string& trend) -> ActorProfile& {
        auto& p = by_user[user];
        p.user_id = user;
        if (seen.emplace(user, trend).second) ++p.n_trends;
        return p;
    };
    for (const auto& r : retweets) {
        ++touch(r.retweeter, r.trend_id).out_degree;
        ++touch(r.retweeted, r.trend_id).in_degree;
    }
    std::vector<ActorProfile> out;
    out.reserve(by_user.size());
    for (auto& [_, p] : by_user) out.push_back(std::move(p));
    return out;
}

void attach_account_metadata(std::vector<ActorProfile>& profiles, const csv::Table& accounts) {
    const auto c_user = accounts.column("user_id");
    const auto c_followers = accounts.column("n_followers");
    const auto c_created = accounts.column("created_at");
    const auto c_status = accounts.column("status");
    std::map<std::string, const csv::Row*> rows;
    for (const auto& row : accounts.rows) rows[row[c_user]] = &row;
    for (auto& p : profiles) {
        auto it = rows.find(p.user_id);
        if (it == rows.end()) continue;
        const auto& row = *it->second;
        if (!row[c_followers].empty()) p.n_followers = std::stoll(row[c_followers]);
        if (!row[c_created].empty()) p.created_at = parse_day(row[c_created].substr(0, 10));
        if (!row[c_status].empty()) {
            const auto& s = row[c_status];
            if (s != "active" && s != "deleted" && s != "suspended") {
                throw std::invalid_argument("accounts: unknown status '" + s + "' for user " + p.user_id);
            }
            p.status = s;
        }
    }
}

std::vector<std::string> PowerUsers::all() const {
    std::vector<std::string> out;
    std::set_union(influencers.begin(), influencers.end(), multipliers.begin(), multipliers.end(),
                   std::back_inserter(out));
    return out;
}

namespace {

std::pair<std::vector<std::string>, std::int64_t> top_k(std::span<const ActorProfile> profiles, std::size_t k,
                                                        std::int64_t ActorProfile::*field) {
    std::vector<const ActorProfile*> ranked;
    for (const auto& p : profiles) {
        if (p.*field > 0) ranked.push_back(&p);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const ActorProfile* a, const ActorProfile* b) {
        if (a->*field != b->*field) return a->*field > b->*field;
        return a->user_id < b->user_id;
    });
    std::vector<std::string> users;
    if (ranked.empty() || k == 0) return {users, 0};
    const std::int64_t cutoff = ranked[std::min(k, ranked.size()) - 1]->*field;
    for (const auto* p : ranked) {
        if (p->*field < cutoff) break;
        users.push_back(p->user_id);
    }
    std::sort(users.begin(), users.end());
    return {users, cutoff};
}

}  // namespace

PowerUsers select_power_users(std::span<const ActorProfile> profiles, std::size_t k) {
    PowerUsers out;
    std::tie(out.influencers, out.in_threshold) = top_k(profiles, k, &ActorProfile::in_degree);
    std::tie(out.multipliers, out.out_threshold) = top_k(profiles, k, &ActorProfile::out_degree);
    std::vector<std::string> both;
    std::set_intersection(out.influencers.begin(), out.influencers.end(), out.multipliers.begin(),
                          out.multipliers.end(), std::back_inserter(both));
    out.overlap = both.size();
    return out;
}

std::vector<std::pair<double, double>> ccdf(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && v[i] == v[i - 1]) continue;
        out.emplace_back(v[i], static_cast<double>(v.size() - i) / n);
    }
    return out;
}

std::vector<std::string> sample_regular_users(std::span<const ActorProfile> profiles,
                                              const std::set<std::string>& excluded, std::int64_t min_trends,
                                              std::size_t n, std::uint64_t seed) {
    std::vector<std::string> pool;
    for (const auto& p : profiles) {
        if (p.n_trends >= min_trends && !excluded.contains(p.user_id)) pool.push_back(p.user_id);
    }
    std::sort(pool.begin(), pool.end());
    if (pool.size() > n) {
        // partial Fisher-Yates with a portable bounded draw
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(n);
        std::sort(pool.begin(), pool.end());
    }
    return pool;
}

namespace {

constexpr std::int64_t kDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

std::int64_t second_of_day(std::int64_t t) { return t - floor_div(t, kDay) * kDay; }

}  // namespace

std::array<double, kCircadianBins> circadian_histogram(std::span<const std::int64_t> timestamps, int offset_minutes) {
    std::array<double, kCircadianBins> bins{};
    std::set<std::int64_t> days;
    for (auto t0 : timestamps) {
        const std::int64_t t = t0 + static_cast<std::int64_t>(offset_minutes) * 60;
        days.insert(floor_div(t, kDay));
        bins[static_cast<std::size_t>(second_of_day(t) / 1800)] += 1.0;
    }
    if (!days.empty()) {
        for (auto& b : bins) b /= static_cast<double>(days.size());
    }
    return bins;
}

std::string to_string(ActivityFlag flag) {
    switch (flag) {
        case ActivityFlag::constant_activity: return "constant_activity";
        case ActivityFlag::periodic_activity: return "periodic_activity";
        case ActivityFlag::none: break;
    }
    return "none";
}

double minute_profile_autocorrelation(std::span<const std::int64_t> timestamps, int lag_minutes) {
    constexpr int kMinutes = 1440;
    constexpr int kHalfWindow = 7;
    std::vector<double> folded(kMinutes, 0.0);
    for (auto t : timestamps) folded[static_cast<std::size_t>(second_of_day(t) / 60)] += 1.0;
    std::vector<double> high(kMinutes);
    for (int m = 0; m < kMinutes; ++m) {
        double avg = 0.0;
        for (int k = -kHalfWindow; k <= kHalfWindow; ++k) avg += folded[static_cast<std::size_t>((m + k + kMinutes) % kMinutes)];
        high[static_cast<std::size_t>(m)] = folded[static_cast<std::size_t>(m)] - avg / (2 * kHalfWindow + 1);
    }
    double num = 0.0, den = 0.0;
    for (int m = 0; m < kMinutes; ++m) {
        num += high[static_cast<std::size_t>(m)] * high[static_cast<std::size_t>((m + lag_minutes) % kMinutes)];
        den += high[static_cast<std::size_t>(m)] * high[static_cast<std::size_t>(m)];
    }
    return den > 0.0 ? num / den : 0.0;
}

ActivityFlag circadian_flags(std::span<const std::int64_t> timestamps) {
    if (timestamps.size() < kMinFlagEvents) return ActivityFlag::none;
    for (int lag : {30, 60, 120}) {
        if (minute_profile_autocorrelation(timestamps, lag) > 0.8) return ActivityFlag::periodic_activity;
    }
    std::array<double, kCircadianBins> counts{};
    for (auto t : timestamps) counts[static_cast<std::size_t>(second_of_day(t) / 1800)] += 1.0;
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= static_cast<double>(kCircadianBins);
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var /= static_cast<double>(kCircadianBins);
    if (std::sqrt(var) / mean < 0.2) return ActivityFlag::constant_activity;
    return ActivityFlag::none;
}

std::map<std::string, std::int64_t> creation_clustering(std::span<const ActorProfile> profiles,
                                                        const std::map<std::string, std::string>& camp_of) {
    std::map<std::string, std::map<Day, std::int64_t>> hist;
    for (const auto& p : profiles) {
        if (!p.created_at) continue;
        auto it = camp_of.find(p.user_id);
        if (it == camp_of.end()) continue;
        ++hist[it->second][*p.created_at];
    }
    std::map<std::string, std::int64_t> out;
    for (const auto& [camp, days] : hist) {
        std::int64_t best = 0;
        for (const auto& [_, c] : days) best = std::max(best, c);
        out[camp] = best;
    }
    return out;
}

}  // namespace rtpol
