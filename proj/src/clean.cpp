#include "tweetlab/clean.hpp"

#include <algorithm>
#include <unordered_map>

namespace tweetlab {

std::vector<UserActivity> build_user_activities(std::span<const UserPost> posts) {
  std::unordered_map<std::string, std::vector<std::int64_t>> stamps;
  for (const auto& p : posts) stamps[p.user_id].push_back(p.created_at.seconds);

  std::vector<UserActivity> out;
  out.reserve(stamps.size());
  for (auto& [user, ts] : stamps) {
    UserActivity a;
    a.user_id = user;
    a.tweet_count = ts.size();
    std::sort(ts.begin(), ts.end());
    a.sorted_timestamps = std::move(ts);
    for (size_t i = 1; i < a.sorted_timestamps.size(); ++i) {
      const std::int64_t gap = a.sorted_timestamps[i] - a.sorted_timestamps[i - 1];
      ++a.interval_histogram[gap];
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(),
            [](const UserActivity& a, const UserActivity& b) { return a.user_id < b.user_id; });
  return out;
}

double top3_interval_coverage(const UserActivity& activity) {
  if (activity.tweet_count < 2) return 0.0;
  // (count desc, interval asc)
  std::vector<std::pair<std::uint64_t, std::int64_t>> buckets;
  buckets.reserve(activity.interval_histogram.size());
  for (const auto& [interval, count] : activity.interval_histogram)
    buckets.emplace_back(count, interval);
  std::sort(buckets.begin(), buckets.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::uint64_t covered = 0, total = 0;
  for (size_t i = 0; i < buckets.size(); ++i) {
    if (i < 3) covered += buckets[i].first;
    total += buckets[i].first;
  }
  return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

BotDetectionResult detect_bots(std::span<const UserActivity> activities,
                               const BotThresholds& thresholds) {
  BotDetectionResult result;
  for (const auto& a : activities) {
    const double coverage = top3_interval_coverage(a);
    if (a.tweet_count > thresholds.cap) {
      result.flags.push_back({a.user_id, BotRule::volume_cap, a.tweet_count, coverage});
      ++result.rule_a_users;
    } else if (a.tweet_count > thresholds.floor && coverage >= thresholds.coverage) {
      result.flags.push_back(
          {a.user_id, BotRule::interval_pattern, a.tweet_count, coverage});
      ++result.rule_b_users;
    }
  }
  std::sort(result.flags.begin(), result.flags.end(),
            [](const BotFlag& a, const BotFlag& b) { return a.user_id < b.user_id; });
  for (const auto& f : result.flags) result.bot_ids.insert(f.user_id);
  return result;
}

std::vector<TweetRecord> remove_bot_tweets(std::vector<TweetRecord> records,
                                           const BotDetectionResult& bots,
                                           BotRemovalStats* stats) {
  std::unordered_map<std::string, BotRule> rule_by_user;
  for (const auto& f : bots.flags) rule_by_user.emplace(f.user_id, f.rule);

  std::vector<TweetRecord> kept;
  kept.reserve(records.size());
  for (auto& r : records) {
    const auto it = rule_by_user.find(r.user_id);
    if (it == rule_by_user.end()) {
      kept.push_back(std::move(r));
      continue;
    }
    if (stats) {
      if (it->second == BotRule::volume_cap)
        ++stats->removed_rule_a;
      else
        ++stats->removed_rule_b;
    }
  }
  if (stats) stats->kept = kept.size();
  return kept;
}

std::map<std::uint64_t, double> user_activity_table(std::span<const TweetRecord> records) {
  std::unordered_map<std::string, std::uint64_t> per_user;
  for (const auto& r : records) ++per_user[r.user_id];

  std::map<std::uint64_t, std::uint64_t> users_by_count;
  for (const auto& [user, n] : per_user) ++users_by_count[n];

  const double total_users = static_cast<double>(per_user.size());
  std::map<std::uint64_t, double> table;
  for (const auto& [count, users] : users_by_count)
    table[count] = static_cast<double>(users) / total_users;
  return table;
}

double cumulative_user_fraction(const std::map<std::uint64_t, double>& table,
                                std::uint64_t limit) {
  double cum = 0.0;
  for (const auto& [count, fraction] : table) {
    if (count <= limit) cum += fraction;
  }
  return cum;
}

}  // namespace tweetlab
