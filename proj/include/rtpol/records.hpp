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

#include <chrono>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtpol {

using Day = std::chrono::sys_days;

// Parses an ISO-8601 calendar day (YYYY-MM-DD). Throws std::invalid_argument.
Day parse_day(std::string_view text);
std::string format_day(Day day);
std::int64_t day_start_seconds(Day day);

struct RetweetRecord {
    std::string trend_phrase;
    Day trend_date;
    std::string retweeter_id;
    std::string retweeted_id;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::optional<std::string> tweet_topic_label;
};

enum class ParseErrorKind { syntax, missing_field, self_retweet, out_of_window };

struct ParseError {
    std::size_t line = 0;  // 1-based
    ParseErrorKind kind = ParseErrorKind::syntax;
    std::string message;
};

struct ParseResult {
    std::vector<RetweetRecord> records;
    std::vector<ParseError> errors;
};

// Reads line-delimited JSON objects. Blank lines are skipped; every other line
// either yields a record or a line-indexed error. Records keep input order.
ParseResult parse_records(std::istream& in);

void write_record(std::ostream& out, const RetweetRecord& record);

// A retweet after ingestion, attached to its merged trend.
struct TrendRetweet {
    std::string trend_id;
    std::string retweeter;
    std::string retweeted;
    std::int64_t timestamp = 0;
    std::string label;  // tweet topic label, empty when absent
};

struct PhraseDay {
    std::string phrase;
    Day day;
};

struct Trend {
    std::string trend_id;
    std::string phrase;
    std::set<Day> dates;
    std::optional<std::string> topic;
};

// Stable identifier used by every artifact: "<phrase>_<first day>".
std::string make_trend_id(std::string_view phrase, Day first_day);

// Occurrences of the same phrase on days at most one day apart collapse into a
// single trend; chains of consecutive days collapse transitively. Output is
// sorted by (first day, phrase).
std::vector<Trend> merge_trends(std::span<const PhraseDay> entries);

// Maps (phrase, day) to the id of the merged trend that contains it.
class TrendIndex {
public:
    explicit TrendIndex(std::span<const Trend> trends);
    const std::string* find(std::string_view phrase, Day day) const;

private:
    std::map<std::pair<std::string, Day>, std::string, std::less<>> lookup_;
};

inline constexpr std::string_view kUnlabeledTopic = "unlabeled";

// Modal label; ties resolve to the lexicographically smallest label. Returns
// "unlabeled" when there are no labels.
std::string assign_trend_topic(std::span<const std::string> labels);
std::string assign_trend_topic(const std::map<std::string, std::size_t>& counts);

}  // namespace rtpol
