#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tweetlab/ingest.hpp"
#include "tweetlab/record.hpp"

namespace tweetlab {

struct UserActivity {
  std::string user_id;
  std::uint64_t tweet_count = 0;
  std::vector<std::int64_t> sorted_timestamps;          // epoch seconds, ascending
  std::map<std::int64_t, std::uint64_t> interval_histogram;  // floored seconds -> count
};

// Per-user reduction over the (pre-geo) post stream. Intervals are gaps
// between consecutive timestamps, floored to whole seconds.
std::vector<UserActivity> build_user_activities(std::span<const UserPost> posts);

enum class BotRule { volume_cap, interval_pattern };

struct BotFlag {
  std::string user_id;
  BotRule rule;
  std::uint64_t tweet_count = 0;
  double top3_coverage = 0.0;
};

struct BotThresholds {
  std::uint64_t cap = 5000;    // rule (a): tweet_count > cap
  std::uint64_t floor = 1000;  // rule (b): tweet_count > floor and ...
  double coverage = 0.90;      // ... top-3 interval buckets cover >= this
};

struct BotDetectionResult {
  std::vector<BotFlag> flags;  // sorted by user_id
  std::unordered_set<std::string> bot_ids;
  std::uint64_t rule_a_users = 0;
  std::uint64_t rule_b_users = 0;
};

// A user matching both rules is attributed to rule (a).
BotDetectionResult detect_bots(std::span<const UserActivity> activities,
                               const BotThresholds& thresholds = {});

// Fraction of all intervals covered by the three most frequent interval
// buckets (ties broken toward the smaller interval). 0 when no intervals.
double top3_interval_coverage(const UserActivity& activity);

struct BotRemovalStats {
  std::uint64_t removed_rule_a = 0;
  std::uint64_t removed_rule_b = 0;
  std::uint64_t kept = 0;
};

std::vector<TweetRecord> remove_bot_tweets(std::vector<TweetRecord> records,
                                           const BotDetectionResult& bots,
                                           BotRemovalStats* stats = nullptr);

// Distinct per-user tweet count -> fraction of users with that count.
// Fractions sum to 1.
std::map<std::uint64_t, double> user_activity_table(std::span<const TweetRecord> records);

// Cumulative fraction of users with tweet_count <= limit.
double cumulative_user_fraction(const std::map<std::uint64_t, double>& table,
                                std::uint64_t limit);

}  // namespace tweetlab
