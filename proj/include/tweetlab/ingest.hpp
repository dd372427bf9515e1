#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetlab/record.hpp"

namespace tweetlab {

class CountyIndex;  // geospatial.hpp

// --- keyword filter -------------------------------------------------------

struct Keyword {
  std::string text;  // stored lowercased
  std::optional<Date> effective;  // active on/after this date; always active if unset
};

// Case-insensitive substring matching against the tweet text. Keywords can
// carry an effective date so additions made mid-collection only apply from
// that date on.
class KeywordFilter {
 public:
  KeywordFilter() = default;
  explicit KeywordFilter(std::vector<Keyword> keywords);

  // CSV: keyword,effective_date (effective_date may be empty).
  static KeywordFilter load(const std::string& path);

  bool matches(std::string_view text, Date tweet_date) const;
  bool empty() const { return keywords_.empty(); }
  size_t size() const { return keywords_.size(); }

 private:
  std::vector<Keyword> keywords_;
};

// --- state name resolution ------------------------------------------------

// Maps Twitter place full names to states. Resolution order:
//   1. trailing ", XX" postal abbreviation,
//   2. the whole string equals a state name (case-insensitive),
//   3. trailing ", USA" with the prefix equal to a state name
//      (Twitter admin-level places look like "Colorado, USA").
// Anything else is unresolvable.
class StateNameTable {
 public:
  // CSV: abbrev,name. A state may carry several alias rows.
  static StateNameTable load(const std::string& path);

  std::optional<State> from_name(std::string_view name) const;
  std::optional<State> resolve_place_full_name(std::string_view full_name) const;

 private:
  std::map<std::string, State> name_to_state_;  // lowercased name -> state
};

// --- per-line parsing -------------------------------------------------------

struct ParseOutcome {
  std::optional<TweetRecord> record;
  const char* skip_reason = nullptr;  // set when record is empty
};

// Parses one NDJSON line of the documented input schema. State resolution
// from the place full name happens here. Never throws on malformed input;
// the caller counts skips by reason.
ParseOutcome parse_tweet_json(std::string_view line, SourceCorpus source,
                              const StateNameTable& states);

// Returns true iff the record carries a US geo tag whose state is among the
// 50 states + DC. `gps_index`, when set, lets coordinate-only tweets resolve
// their state through county polygons (resolved state is written back).
bool accept_us_geotag(TweetRecord& record, const CountyIndex* gps_index = nullptr);

// --- merge / dedup ----------------------------------------------------------

struct MergeResult {
  std::vector<TweetRecord> records;
  std::uint64_t duplicates = 0;
  // per local-ordering day (UTC date), counts by source corpus
  std::map<Date, std::array<std::uint64_t, 2>> per_day_by_source;
};

// Union keyed by tweet_id. Primary records win collisions; within one stream
// the first occurrence wins. Output order is the arrival order of survivors.
MergeResult merge_corpora(std::vector<TweetRecord> primary,
                          std::vector<TweetRecord> compensation);

// --- the full ingest stage --------------------------------------------------

struct IngestCounters {
  std::uint64_t lines_read = 0;
  std::uint64_t skipped_malformed = 0;
  std::uint64_t skipped_out_of_window = 0;
  std::uint64_t keyword_rejected = 0;
  std::uint64_t geo_rejected = 0;
  std::uint64_t retweets_removed = 0;
  std::uint64_t duplicates_removed = 0;
  std::uint64_t accepted = 0;

  std::uint64_t skips() const { return skipped_malformed + skipped_out_of_window; }
  // accepted must equal lines − skips − keyword − geo − retweets − duplicates
  bool reconciles() const;
};

struct UserPost {
  std::string user_id;
  UtcTime created_at;
};

struct IngestOptions {
  Date window_from{2020, 1, 25};
  Date window_to{2020, 5, 10};
  const CountyIndex* gps_state_index = nullptr;
};

struct IngestResult {
  std::vector<TweetRecord> records;  // accepted, deduplicated
  IngestCounters counters;
  // Post-keyword, pre-geo activity stream: bot detection runs on the full
  // keyword-filtered corpus, not just the geo-resolved slice.
  std::vector<UserPost> activity;
  std::map<Date, std::array<std::uint64_t, 2>> per_day_by_source;
};

// Reads NDJSON files (transparently gzip-compressed or plain) and runs the
// parse -> window -> keyword -> geo -> retweet -> dedup pipeline.
IngestResult ingest_files(const std::vector<std::string>& primary_paths,
                          const std::vector<std::string>& compensation_paths,
                          const KeywordFilter& keywords, const StateNameTable& states,
                          const IngestOptions& options);

// --- canonical record file ---------------------------------------------------

std::string record_to_json(const TweetRecord& r);
std::optional<TweetRecord> record_from_json(std::string_view line);
void write_canonical(const std::string& path, const std::vector<TweetRecord>& records);
std::vector<TweetRecord> read_canonical(const std::string& path);

// Line reader over plain or gzip NDJSON (zlib handles both transparently).
class LineReader {
 public:
  explicit LineReader(const std::string& path);  // throws if unreadable
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tweetlab
