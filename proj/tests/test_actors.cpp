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

#include <random>

#include "doctest.h"
#include "rtpol/actors.hpp"
#include "rtpol/stats.hpp"
#include "rtpol/synth.hpp"

using namespace rtpol;

namespace {

TrendRetweet rt(std::string trend, std::string from, std::string to, std::int64_t ts = 0) {
    return {std::move(trend), std::move(from), std::move(to), ts, ""};
}

std::vector<TrendRetweet> retweets_of(const SynthCorpus& corpus) {
    std::vector<TrendRetweet> out;
    for (const auto& r : corpus.records) {
        out.push_back({make_trend_id(r.trend_phrase, r.trend_date), r.retweeter_id, r.retweeted_id, r.timestamp, ""});
    }
    return out;
}

}  // namespace

TEST_CASE("profiles aggregate degrees and trends") {
    std::vector<TrendRetweet> rs;
    for (int k = 0; k < 3; ++k) rs.push_back(rt("t1", "a" + std::to_string(k), "hub"));
    for (int k = 0; k < 2; ++k) rs.push_back(rt("t2", "a" + std::to_string(k), "hub"));
    const auto profiles = profile_users(rs);
    const auto& hub = *std::find_if(profiles.begin(), profiles.end(), [](const auto& p) { return p.user_id == "hub"; });
    CHECK(hub.in_degree == 5);
    CHECK(hub.n_trends == 2);
    std::int64_t in = 0, out = 0;
    for (const auto& p : profiles) {
        in += p.in_degree;
        out += p.out_degree;
    }
    CHECK(in == 5);
    CHECK(out == 5);
}

TEST_CASE("power users") {
    std::vector<TrendRetweet> rs = {rt("t", "a", "b"), rt("t", "a", "c"), rt("t", "c", "b")};
    const auto top1 = select_power_users(profile_users(rs), 1);
    CHECK(top1.influencers == std::vector<std::string>{"b"});
    CHECK(top1.multipliers == std::vector<std::string>{"a"});
    CHECK(top1.in_threshold == 2);
    CHECK(top1.overlap == 0);

    SUBCASE("ties at rank k are all kept") {
        std::vector<TrendRetweet> tied = {rt("t", "x", "a"), rt("t", "x", "b"), rt("t", "x", "c")};
        const auto p = select_power_users(profile_users(tied), 2);
        CHECK(p.influencers.size() == 3);
    }
    SUBCASE("k above the population takes everyone with a degree") {
        const auto p = select_power_users(profile_users(rs), 100);
        CHECK(p.influencers == std::vector<std::string>{"b", "c"});
        CHECK(p.multipliers == std::vector<std::string>{"a", "c"});
        CHECK(p.overlap == 1);
        CHECK(p.all() == std::vector<std::string>{"a", "b", "c"});
    }
    SUBCASE("order of records does not matter") {
        std::mt19937_64 rng(1);
        SynthConfig cfg;
        cfg.trends_per_topic = 3;
        auto records = retweets_of(generate_corpus(cfg));
        const auto before = select_power_users(profile_users(records), 50);
        std::shuffle(records.begin(), records.end(), rng);
        const auto after = select_power_users(profile_users(records), 50);
        CHECK(before.influencers == after.influencers);
        CHECK(before.multipliers == after.multipliers);
    }
}

TEST_CASE("planted roles are recovered") {
    SynthConfig cfg;
    cfg.trends_per_topic = 10;
    const auto corpus = generate_corpus(cfg);
    const auto power = select_power_users(profile_users(retweets_of(corpus)), static_cast<std::size_t>(cfg.n_influencers));
    CHECK(power.overlap == 0);
    std::size_t inf = 0, mul = 0;
    for (const auto& u : power.influencers) inf += u[0] == 'i';
    for (const auto& u : power.multipliers) mul += u[0] == 'm';
    CHECK(inf >= 95);
    CHECK(mul >= 95);
}

TEST_CASE("ccdf") {
    const std::vector<double> v = {1, 1, 2};
    const auto c = ccdf(v);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == std::pair<double, double>{1.0, 1.0});
    CHECK(c[1].second == doctest::Approx(1.0 / 3));
    const std::vector<double> single = {4};
    CHECK(ccdf(single) == std::vector<std::pair<double, double>>{{4.0, 1.0}});
    std::mt19937_64 rng(2);
    std::vector<double> many;
    for (int k = 0; k < 300; ++k) many.push_back(static_cast<double>(rng() % 40));
    const auto m = ccdf(many);
    CHECK(m.front().second == 1.0);
    for (std::size_t k = 1; k < m.size(); ++k) {
        CHECK(m[k].first > m[k - 1].first);
        CHECK(m[k].second <= m[k - 1].second);
    }
}

TEST_CASE("regular user sample") {
    std::vector<ActorProfile> profiles;
    for (int i = 0; i < 2500; ++i) {
        ActorProfile p;
        p.user_id = "r" + std::to_string(10000 + i);
        p.n_trends = i < 2000 ? 12 : 3;
        profiles.push_back(p);
    }
    const std::set<std::string> power = {"r10000", "r10001"};
    const auto a = sample_regular_users(profiles, power, 10, 1000, 5);
    const auto b = sample_regular_users(profiles, power, 10, 1000, 5);
    CHECK(a.size() == 1000);
    CHECK(a == b);
    CHECK(a != sample_regular_users(profiles, power, 10, 1000, 6));
    for (const auto& u : a) {
        CHECK_FALSE(power.contains(u));
        CHECK(std::stoi(u.substr(1)) < 12000);
    }
    CHECK(sample_regular_users(profiles, power, 13, 1000, 5).empty());
    CHECK(sample_regular_users(profiles, {}, 10, 5000, 5).size() == 2000);
}

TEST_CASE("circadian histogram") {
    const std::int64_t day = 86400;
    const std::vector<std::int64_t> ts = {0, 1799, 1800, day + 10, day + 20};
    const auto h = circadian_histogram(ts);
    CHECK(h[0] == doctest::Approx(2.0));  // four events in bin 0 over two days
    CHECK(h[1] == doctest::Approx(0.5));
    const auto shifted = circadian_histogram(ts, 60);
    CHECK(shifted[2] == doctest::Approx(2.0));
    CHECK(shifted[3] == doctest::Approx(0.5));
}

TEST_CASE("activity flags") {
    std::mt19937_64 rng(3);
    SUBCASE("uniform activity is constant") {
        std::uniform_int_distribution<std::int64_t> when(0, 30 * 86400 - 1);
        std::vector<std::int64_t> ts;
        for (int k = 0; k < 5000; ++k) ts.push_back(when(rng));
        CHECK(circadian_flags(ts) == ActivityFlag::constant_activity);
    }
    SUBCASE("hourly bursts are periodic") {
        std::uniform_int_distribution<std::int64_t> jitter(0, 59);
        std::vector<std::int64_t> ts;
        for (int d = 0; d < 10; ++d) {
            for (int h = 0; h < 24; ++h) ts.push_back(d * 86400 + h * 3600 + jitter(rng));
        }
        CHECK(circadian_flags(ts) == ActivityFlag::periodic_activity);
        CHECK(minute_profile_autocorrelation(ts, 60) > 0.8);
    }
    SUBCASE("a human day is neither") {
        std::normal_distribution<double> morning(9 * 3600.0, 3600.0), evening(20 * 3600.0, 5400.0);
        std::vector<std::int64_t> ts;
        for (int d = 0; d < 30; ++d) {
            for (int k = 0; k < 10; ++k) {
                const double s = (k % 2 ? morning(rng) : evening(rng));
                ts.push_back(d * 86400 + static_cast<std::int64_t>(std::clamp(s, 0.0, 86399.0)));
            }
        }
        CHECK(circadian_flags(ts) == ActivityFlag::none);
    }
    SUBCASE("too few events") {
        std::vector<std::int64_t> ts(199, 0);
        CHECK(circadian_flags(ts) == ActivityFlag::none);
    }
    SUBCASE("flags ignore event order") {
        std::uniform_int_distribution<std::int64_t> when(0, 5 * 86400);
        std::vector<std::int64_t> ts;
        for (int k = 0; k < 400; ++k) ts.push_back(when(rng));
        const auto before = circadian_flags(ts);
        std::shuffle(ts.begin(), ts.end(), rng);
        CHECK(circadian_flags(ts) == before);
    }
}

TEST_CASE("account metadata and creation clustering") {
    std::vector<ActorProfile> profiles(5);
    for (int i = 0; i < 5; ++i) profiles[static_cast<std::size_t>(i)].user_id = "a" + std::to_string(i);
    csv::Table accounts;
    accounts.header = {"user_id", "n_followers", "created_at", "status"};
    accounts.rows = {{"a0", "10", "2020-01-01", "active"},
                     {"a1", "", "2020-01-01T10:00:00", "suspended"},
                     {"a2", "7", "2020-01-01", ""},
                     {"a3", "1", "2020-02-01", "deleted"}};
    attach_account_metadata(profiles, accounts);
    CHECK(profiles[0].n_followers == 10);
    CHECK_FALSE(profiles[1].n_followers.has_value());
    CHECK(profiles[1].status == "suspended");
    CHECK_FALSE(profiles[4].created_at.has_value());
    const std::map<std::string, std::string> camps = {{"a0", "l"}, {"a1", "l"}, {"a2", "l"}, {"a3", "r"}, {"a4", "r"}};
    const auto c = creation_clustering(profiles, camps);
    CHECK(c.at("l") == 3);
    CHECK(c.at("r") == 1);
    accounts.rows.push_back({"a4", "1", "2020-02-01", "banned"});
    CHECK_THROWS_AS(attach_account_metadata(profiles, accounts), std::invalid_argument);
}

TEST_CASE("multipliers join more trends than regular users") {
    SynthConfig cfg;
    cfg.trends_per_topic = 10;
    const auto profiles = profile_users(retweets_of(generate_corpus(cfg)));
    std::vector<double> mult, reg;
    for (const auto& p : profiles) (p.user_id[0] == 'm' ? mult : reg).push_back(static_cast<double>(p.n_trends));
    CHECK(stats::mann_whitney_greater(mult, reg).p_value < 0.01);
}
