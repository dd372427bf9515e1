#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetlab/geospatial.hpp"
#include "tweetlab/record.hpp"
#include "tweetlab/temporal.hpp"

namespace tweetlab {

// --- lexicon scoring ---------------------------------------------------------

class SentimentLexicon {
 public:
  // CSV: word,polarity,subjectivity with polarity in [-1,1] and
  // subjectivity in [0,1]; ranges enforced on load.
  static SentimentLexicon load(const std::string& path);
  static SentimentLexicon from_entries(
      std::span<const std::tuple<std::string, double, double>> entries);

  std::optional<std::pair<double, double>> lookup(std::string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::pair<double, double>> entries_;  // lowercased word
};

struct TextScore {
  double polarity = 0.0;      // in [-1, 1]
  double subjectivity = 0.0;  // in [0, 1]
};

// Average polarity/subjectivity over matched words; (0, 0) with no matches.
TextScore score_text(std::string_view text, const SentimentLexicon& lexicon);

// --- polarity/subjectivity threshold grid ---------------------------------------

struct RatioGrid {
  std::vector<double> subj_thresholds;
  std::vector<double> pol_thresholds;
  // ratio[s][p]; +infinity when the negative count is zero
  std::vector<std::vector<double>> ratio;
  std::vector<std::vector<std::uint64_t>> positives;
  std::vector<std::vector<std::uint64_t>> negatives;
  std::vector<std::uint64_t> candidates;  // per subjectivity threshold
};

RatioGrid polarity_ratio_grid(std::span<const TextScore> scores,
                              std::span<const double> subj_thresholds,
                              std::span<const double> pol_thresholds);

// --- facial emoji classification --------------------------------------------------

enum class EmojiCategory { positive = 0, neutral = 1, negative = 2 };

std::string_view emoji_category_name(EmojiCategory c);

struct EmojiCounts {
  std::array<std::uint64_t, 3> counts{};  // indexed by EmojiCategory

  std::uint64_t total() const { return counts[0] + counts[1] + counts[2]; }
  std::uint64_t operator[](EmojiCategory c) const {
    return counts[static_cast<size_t>(c)];
  }
  EmojiCounts& operator+=(const EmojiCounts& o) {
    for (size_t i = 0; i < 3; ++i) counts[i] += o.counts[i];
    return *this;
  }
};

class EmojiTable {
 public:
  // CSV: codepoints,category. Codepoints are '-'-joined hex values, e.g.
  // "1F602" or "2639-FE0F". Throws when one sequence lands in two categories.
  static EmojiTable load(const std::string& path);

  // Longest-match scan over the UTF-8 text; a variation selector (FE0F)
  // directly after a match is absorbed. Unknown emojis are ignored.
  EmojiCounts classify(std::string_view utf8_text) const;

  // Per-sequence counts for frequency tables.
  std::map<std::u32string, std::uint64_t> count_sequences(std::string_view utf8_text) const;
  std::optional<EmojiCategory> category(const std::u32string& seq) const;

  size_t size() const { return sequences_.size(); }

 private:
  std::map<std::u32string, EmojiCategory> sequences_;
  size_t max_len_ = 0;
};

std::vector<char32_t> decode_utf8(std::string_view s);  // invalid bytes -> U+FFFD

// --- daily series --------------------------------------------------------------------

struct DailySentimentRow {
  Date date;
  std::optional<State> state;  // unset for the all-states series
  EmojiCounts counts;
  // Occurrence-weighted percentage shares; unset when the day saw no emojis.
  std::optional<std::array<double, 3>> shares;
};

std::vector<DailySentimentRow> daily_sentiment_series(std::span<const TweetRecord> records,
                                                      const EmojiTable& table,
                                                      const ClockRuleTable& rules,
                                                      bool by_state);

// --- event-specific sentiment -----------------------------------------------------------

enum class EventKind {
  first_case,
  case_100,
  case_1000,
  first_death,
  death_100,
  death_1000,
  lockdown,
  reopen,
};

std::string_view event_kind_name(EventKind e);
constexpr std::array<EventKind, 8> kAllEventKinds = {
    EventKind::first_case, EventKind::case_100,  EventKind::case_1000,
    EventKind::first_death, EventKind::death_100, EventKind::death_1000,
    EventKind::lockdown,   EventKind::reopen,
};

// First date the cumulative count reaches the threshold; absent when the
// series never crosses it.
std::map<State, Date> derive_case_events(const CaseSeries& series, EventKind kind);

struct EventSentiment {
  EventKind event;
  std::array<double, 3> mean{};  // percentage shares across states
  std::array<double, 3> stddev{};  // population std
  size_t n_states = 0;
  std::vector<State> excluded;  // zero emojis in window, or no event date
  // per-state percentage shares, state-sorted (MANOVA consumes these)
  std::vector<std::array<double, 3>> state_shares;
};

EventSentiment event_sentiment(std::span<const TweetRecord> records, EventKind kind,
                               const std::map<State, Date>& event_dates,
                               std::span<const State> states, const EmojiTable& table,
                               const ClockRuleTable& rules, int window_days = 7);

}  // namespace tweetlab
