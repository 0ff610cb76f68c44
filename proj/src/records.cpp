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

#include "rtpol/records.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace rtpol {

using json = nlohmann::json;

namespace {

int parse_fixed_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: " + std::string(text));
    }
    return value;
}

// Accepts JSON strings and integers as user identifiers.
std::optional<std::string> id_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
    if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
    throw std::invalid_argument(std::string("field '") + key + "' must be a string or integer");
}

}  // namespace

Day parse_day(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("invalid day '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const int y = parse_fixed_int(text.substr(0, 4));
    const int m = parse_fixed_int(text.substr(5, 2));
    const int d = parse_fixed_int(text.substr(8, 2));
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar day '" + std::string(text) + "'");
    return Day{ymd};
}

std::string format_day(Day day) {
    std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::int64_t day_start_seconds(Day day) {
    return std::chrono::duration_cast<std::chrono::seconds>(day.time_since_epoch()).count();
}

ParseResult parse_records(std::istream& in) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        auto fail = [&](ParseErrorKind kind, std::string msg) {
            result.errors.push_back({line_no, kind, std::move(msg)});
        };

        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            fail(ParseErrorKind::syntax, "malformed record");
            continue;
        }
        try {
            RetweetRecord rec;
            auto phrase = obj.find("trend_phrase");
            auto date = obj.find("trend_date");
            auto ts = obj.find("timestamp");
            auto from = id_field(obj, "retweeter_id");
            auto to = id_field(obj, "retweeted_id");
            const char* missing = nullptr;
            if (phrase == obj.end() || !phrase->is_string()) missing = "trend_phrase";
            else if (date == obj.end() || !date->is_string()) missing = "trend_date";
            else if (!from) missing = "retweeter_id";
            else if (!to) missing = "retweeted_id";
            else if (ts == obj.end() || !ts->is_number_integer()) missing = "timestamp";
            if (missing) {
                fail(ParseErrorKind::missing_field, std::string("missing field ") + missing);
                continue;
            }
            rec.trend_phrase = phrase->get<std::string>();
            rec.trend_date = parse_day(date->get<std::string>());
            rec.retweeter_id = std::move(*from);
            rec.retweeted_id = std::move(*to);
            rec.timestamp = ts->get<std::int64_t>();
            if (auto lbl = obj.find("tweet_topic_label"); lbl != obj.end() && lbl->is_string()) {
                rec.tweet_topic_label = lbl->get<std::string>();
            }
            if (rec.retweeter_id == rec.retweeted_id) {
                fail(ParseErrorKind::self_retweet, "self-retweet by " + rec.retweeter_id);
                continue;
            }
            const auto start = day_start_seconds(rec.trend_date);
            if (rec.timestamp < start || rec.timestamp >= start + 48 * 3600) {
                fail(ParseErrorKind::out_of_window, "timestamp outside the 48h trend window");
                continue;
            }
            result.records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            fail(ParseErrorKind::syntax, e.what());
        }
    }
    return result;
}

void write_record(std::ostream& out, const RetweetRecord& record) {
    json obj;
    obj["trend_phrase"] = record.trend_phrase;
    obj["trend_date"] = format_day(record.trend_date);
    obj["retweeter_id"] = record.retweeter_id;
    obj["retweeted_id"] = record.retweeted_id;
    obj["timestamp"] = record.timestamp;
    if (record.tweet_topic_label) obj["tweet_topic_label"] = *record.tweet_topic_label;
    out << obj.dump() << '\n';
}

std::string make_trend_id(std::string_view phrase, Day first_day) {
    return std::string(phrase) + "_" + format_day(first_day);
}

std::vector<Trend> merge_trends(std::span<const PhraseDay> entries) {
    std::map<std::string, std::set<Day>> by_phrase;
    for (const auto& e : entries) by_phrase[e.phrase].insert(e.day);

    std::vector<Trend> out;
    auto flush = [&out](const std::string& phrase, std::set<Day>& run) {
        Trend t;
        t.phrase = phrase;
        t.trend_id = make_trend_id(phrase, *run.begin());
        t.dates = std::move(run);
        run.clear();
        out.push_back(std::move(t));
    };
    for (auto& [phrase, days] : by_phrase) {
        std::set<Day> run;
        for (Day d : days) {
            if (!run.empty() && (d - *run.rbegin()).count() > 1) flush(phrase, run);
            run.insert(d);
        }
        flush(phrase, run);
    }
    std::sort(out.begin(), out.end(), [](const Trend& a, const Trend& b) {
        if (*a.dates.begin() != *b.dates.begin()) return *a.dates.begin() < *b.dates.begin();
        return a.phrase < b.phrase;
    });
    return out;
}

TrendIndex::TrendIndex(std::span<const Trend> trends) {
    for (const auto& t : trends) {
        for (Day d : t.dates) lookup_.emplace(std::make_pair(t.phrase, d), t.trend_id);
    }
}

const std::string* TrendIndex::find(std::string_view phrase, Day day) const {
    auto it = lookup_.find(std::make_pair(std::string(phrase), day));
    return it == lookup_.end() ? nullptr : &it->second;
}

std::string assign_trend_topic(const std::map<std::string, std::size_t>& counts) {
    std::string best;
    std::size_t best_count = 0;
    // map iteration is lexicographic, so a strict comparison keeps the smallest label on ties
    for (const auto& [label, n] : counts) {
        if (n > best_count) {
            best = label;
            best_count = n;
        }
    }
    return best_count == 0 ? std::string(kUnlabeledTopic) : best;
}

std::string assign_trend_topic(std::span<const std::string> labels) {
    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    return assign_trend_topic(counts);
}

}  // namespace rtpol
