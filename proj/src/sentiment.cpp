#include "tweetlab/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tweetlab/csv.hpp"
#include "tweetlab/util.hpp"

namespace tweetlab {

// --- lexicon ----------------------------------------------------------------

SentimentLexicon SentimentLexicon::load(const std::string& path) {
  SentimentLexicon lex;
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 3) throw std::runtime_error("bad lexicon row in " + path);
    const double polarity = std::stod(row[1]);
    const double subjectivity = std::stod(row[2]);
    if (polarity < -1.0 || polarity > 1.0 || subjectivity < 0.0 || subjectivity > 1.0)
      throw std::runtime_error("lexicon scores out of range for word: " + row[0]);
    lex.entries_[to_lower_ascii(row[0])] = {polarity, subjectivity};
  }
  if (lex.entries_.empty()) throw std::runtime_error("empty lexicon: " + path);
  return lex;
}

SentimentLexicon SentimentLexicon::from_entries(
    std::span<const std::tuple<std::string, double, double>> entries) {
  SentimentLexicon lex;
  for (const auto& [word, pol, subj] : entries) {
    if (pol < -1.0 || pol > 1.0 || subj < 0.0 || subj > 1.0)
      throw std::runtime_error("lexicon scores out of range for word: " + word);
    lex.entries_[to_lower_ascii(word)] = {pol, subj};
  }
  return lex;
}

std::optional<std::pair<double, double>> SentimentLexicon::lookup(
    std::string_view word) const {
  const auto it = entries_.find(to_lower_ascii(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TextScore score_text(std::string_view text, const SentimentLexicon& lexicon) {
  double pol_sum = 0.0, subj_sum = 0.0;
  size_t matched = 0;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) {
      if (const auto hit = lexicon.lookup(word)) {
        pol_sum += hit->first;
        subj_sum += hit->second;
        ++matched;
      }
      word.clear();
    }
  };
  for (const char c : text) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else
      flush();
  }
  flush();
  if (matched == 0) return {0.0, 0.0};
  return {pol_sum / static_cast<double>(matched), subj_sum / static_cast<double>(matched)};
}

// --- threshold grid ------------------------------------------------------------

RatioGrid polarity_ratio_grid(std::span<const TextScore> scores,
                              std::span<const double> subj_thresholds,
                              std::span<const double> pol_thresholds) {
  RatioGrid grid;
  grid.subj_thresholds.assign(subj_thresholds.begin(), subj_thresholds.end());
  grid.pol_thresholds.assign(pol_thresholds.begin(), pol_thresholds.end());
  const size_t ns = grid.subj_thresholds.size();
  const size_t np = grid.pol_thresholds.size();
  grid.ratio.assign(ns, std::vector<double>(np, 0.0));
  grid.positives.assign(ns, std::vector<std::uint64_t>(np, 0));
  grid.negatives.assign(ns, std::vector<std::uint64_t>(np, 0));
  grid.candidates.assign(ns, 0);

  for (size_t si = 0; si < ns; ++si) {
    const double s = grid.subj_thresholds[si];
    for (const auto& score : scores) {
      if (!(score.subjectivity > s)) continue;
      ++grid.candidates[si];
      for (size_t pi = 0; pi < np; ++pi) {
        const double p = grid.pol_thresholds[pi];
        if (score.polarity > p) ++grid.positives[si][pi];
        if (score.polarity < -p) ++grid.negatives[si][pi];
      }
    }
    for (size_t pi = 0; pi < np; ++pi) {
      const auto pos = grid.positives[si][pi];
      const auto neg = grid.negatives[si][pi];
      grid.ratio[si][pi] = neg == 0
                               ? std::numeric_limits<double>::infinity()
                               : static_cast<double>(pos) / static_cast<double>(neg);
    }
  }
  return grid;
}

// --- emoji table -----------------------------------------------------------------

std::string_view emoji_category_name(EmojiCategory c) {
  switch (c) {
    case EmojiCategory::positive: return "positive";
    case EmojiCategory::neutral: return "neutral";
    default: return "negative";
  }
}

static std::optional<EmojiCategory> category_from_name(std::string_view n) {
  if (n == "positive") return EmojiCategory::positive;
  if (n == "neutral") return EmojiCategory::neutral;
  if (n == "negative") return EmojiCategory::negative;
  return std::nullopt;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6 && i + 1 < s.size()) {
      cp = static_cast<char32_t>(c & 0x1F) << 6 |
           (static_cast<unsigned char>(s[i + 1]) & 0x3F);
      len = 2;
    } else if ((c >> 4) == 0xE && i + 2 < s.size()) {
      cp = static_cast<char32_t>(c & 0x0F) << 12 |
           (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3F);
      len = 3;
    } else if ((c >> 3) == 0x1E && i + 3 < s.size()) {
      cp = static_cast<char32_t>(c & 0x07) << 18 |
           (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
           (static_cast<unsigned char>(s[i + 3]) & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

EmojiTable EmojiTable::load(const std::string& path) {
  EmojiTable table;
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 2) throw std::runtime_error("bad emoji table row in " + path);
    std::u32string seq;
    for (const auto& hex : split(row[0], '-')) {
      if (hex.empty()) throw std::runtime_error("bad codepoint in " + path);
      seq.push_back(static_cast<char32_t>(std::stoul(hex, nullptr, 16)));
    }
    const auto cat = category_from_name(to_lower_ascii(trim(row[1])));
    if (!cat) throw std::runtime_error("bad emoji category in " + path + ": " + row[1]);
    const auto [it, inserted] = table.sequences_.emplace(seq, *cat);
    if (!inserted && it->second != *cat)
      throw std::runtime_error("emoji sequence in two categories: " + row[0]);
    table.max_len_ = std::max(table.max_len_, seq.size());
  }
  if (table.sequences_.empty()) throw std::runtime_error("empty emoji table: " + path);
  return table;
}

std::optional<EmojiCategory> EmojiTable::category(const std::u32string& seq) const {
  const auto it = sequences_.find(seq);
  if (it == sequences_.end()) return std::nullopt;
  return it->second;
}

std::map<std::u32string, std::uint64_t> EmojiTable::count_sequences(
    std::string_view utf8_text) const {
  std::map<std::u32string, std::uint64_t> found;
  const std::vector<char32_t> cps = decode_utf8(utf8_text);
  size_t i = 0;
  while (i < cps.size()) {
    size_t matched = 0;
    std::u32string best;
    const size_t limit = std::min(max_len_, cps.size() - i);
    std::u32string probe;
    for (size_t len = 1; len <= limit; ++len) {
      probe.assign(cps.begin() + static_cast<std::ptrdiff_t>(i),
                   cps.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (sequences_.count(probe)) {
        matched = len;
        best = probe;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    i += matched;
    // absorb a variation selector following the match
    if (i < cps.size() && cps[i] == 0xFE0F) ++i;
    ++found[best];
  }
  return found;
}

EmojiCounts EmojiTable::classify(std::string_view utf8_text) const {
  EmojiCounts counts;
  for (const auto& [seq, n] : count_sequences(utf8_text)) {
    counts.counts[static_cast<size_t>(sequences_.at(seq))] += n;
  }
  return counts;
}

// --- daily series ---------------------------------------------------------------------

namespace {

std::optional<std::array<double, 3>> shares_of(const EmojiCounts& c) {
  const double total = static_cast<double>(c.total());
  if (total == 0.0) return std::nullopt;
  return std::array<double, 3>{100.0 * c.counts[0] / total, 100.0 * c.counts[1] / total,
                               100.0 * c.counts[2] / total};
}

}  // namespace

std::vector<DailySentimentRow> daily_sentiment_series(std::span<const TweetRecord> records,
                                                      const EmojiTable& table,
                                                      const ClockRuleTable& rules,
                                                      bool by_state) {
  std::map<std::pair<Date, std::optional<State>>, EmojiCounts> buckets;
  for (const auto& r : records) {
    if (!r.geo.state) continue;
    const EmojiCounts counts = table.classify(r.text);
    const LocalTime lt = to_local(r.created_at_utc, *r.geo.state, rules);
    const std::optional<State> key_state =
        by_state ? std::optional<State>(*r.geo.state) : std::nullopt;
    buckets[{lt.date, key_state}] += counts;
  }
  std::vector<DailySentimentRow> rows;
  rows.reserve(buckets.size());
  for (const auto& [key, counts] : buckets) {
    DailySentimentRow row;
    row.date = key.first;
    row.state = key.second;
    row.counts = counts;
    row.shares = shares_of(counts);
    rows.push_back(row);
  }
  return rows;
}

// --- events ------------------------------------------------------------------------------

std::string_view event_kind_name(EventKind e) {
  switch (e) {
    case EventKind::first_case: return "first_case";
    case EventKind::case_100: return "case_100";
    case EventKind::case_1000: return "case_1000";
    case EventKind::first_death: return "first_death";
    case EventKind::death_100: return "death_100";
    case EventKind::death_1000: return "death_1000";
    case EventKind::lockdown: return "lockdown";
    default: return "reopen";
  }
}

std::map<State, Date> derive_case_events(const CaseSeries& series, EventKind kind) {
  std::uint64_t threshold = 0;
  bool deaths = false;
  switch (kind) {
    case EventKind::first_case: threshold = 1; break;
    case EventKind::case_100: threshold = 100; break;
    case EventKind::case_1000: threshold = 1000; break;
    case EventKind::first_death: threshold = 1; deaths = true; break;
    case EventKind::death_100: threshold = 100; deaths = true; break;
    case EventKind::death_1000: threshold = 1000; deaths = true; break;
    default:
      throw std::invalid_argument("derive_case_events handles case/death events only");
  }
  std::map<State, Date> out;
  for (const auto& [state, pts] : series.by_state) {
    for (const auto& p : pts) {
      const std::uint64_t value = deaths ? p.deaths : p.cases;
      if (value >= threshold) {
        out[state] = p.date;
        break;
      }
    }
  }
  return out;
}

EventSentiment event_sentiment(std::span<const TweetRecord> records, EventKind kind,
                               const std::map<State, Date>& event_dates,
                               std::span<const State> states, const EmojiTable& table,
                               const ClockRuleTable& rules, int window_days) {
  EventSentiment out;
  out.event = kind;

  std::map<State, EmojiCounts> per_state;
  std::map<State, std::pair<Date, Date>> windows;
  for (const State s : states) {
    const auto it = event_dates.find(s);
    if (it == event_dates.end()) {
      out.excluded.push_back(s);
      continue;
    }
    windows[s] = {it->second, add_days(it->second, window_days - 1)};
    per_state[s] = EmojiCounts{};
  }

  for (const auto& r : records) {
    if (!r.geo.state) continue;
    const auto wit = windows.find(*r.geo.state);
    if (wit == windows.end()) continue;
    const LocalTime lt = to_local(r.created_at_utc, *r.geo.state, rules);
    if (lt.date < wit->second.first || lt.date > wit->second.second) continue;
    per_state[*r.geo.state] += table.classify(r.text);
  }

  std::vector<std::array<double, 3>> shares;
  for (const auto& [state, counts] : per_state) {
    const auto s = shares_of(counts);
    if (!s) {
      out.excluded.push_back(state);
      continue;
    }
    shares.push_back(*s);
  }
  out.n_states = shares.size();
  out.state_shares = shares;
  if (shares.empty()) return out;

  for (size_t c = 0; c < 3; ++c) {
    double sum = 0.0;
    for (const auto& s : shares) sum += s[c];
    out.mean[c] = sum / static_cast<double>(shares.size());
    double ss = 0.0;
    for (const auto& s : shares) ss += (s[c] - out.mean[c]) * (s[c] - out.mean[c]);
    out.stddev[c] = std::sqrt(ss / static_cast<double>(shares.size()));
  }
  return out;
}

}  // namespace tweetlab
