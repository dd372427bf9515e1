#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetlab/record.hpp"
#include "tweetlab/temporal.hpp"

namespace tweetlab {

// --- event calendar ----------------------------------------------------------

enum class AnchorKind { lockdown, reopen };

class EventCalendar {
 public:
  // CSV: state,lockdown_date,reopen_date (either date may be empty)
  static EventCalendar load(const std::string& path);

  void set(State s, std::optional<Date> lockdown, std::optional<Date> reopen);
  std::optional<Date> anchor(State s, AnchorKind kind) const;
  std::vector<State> states_with(AnchorKind kind) const;

 private:
  struct Entry {
    std::optional<Date> lockdown;
    std::optional<Date> reopen;
  };
  std::map<State, Entry> entries_;
};

// --- engagement indices --------------------------------------------------------

// Hourly work-engagement index: the weekend share of hour i divided by the
// workday share, minus one. Exactly -1 when the weekend count is zero but the
// workday count is positive. Missing (nullopt) when the workday count is zero
// or either weekly total is zero.
std::optional<double> hourly_engagement(const HourWeekMatrix& matrix, int hour);

// Daily analog over the nine business hours for weekday j in 1..5: weekend
// business-hour share over day-j business-hour share, minus one.
std::optional<double> daily_engagement(const HourWeekMatrix& matrix, int weekday);

inline constexpr int kBusinessHourSlots = kBusinessLastHour - kBusinessFirstHour + 1;

struct EngagementRow {
  State state = State::AL;
  Date window_start;
  Date window_end;            // inclusive
  int week_offset = 0;        // 0 = the week starting at the anchor date
  std::uint64_t business_tweets = 0;  // all seven days, hours 8..16
  std::array<std::optional<double>, kBusinessHourSlots> hourly;  // hours 8..16
  std::array<std::optional<double>, 5> daily;                    // Mon..Fri
  std::optional<double> hourly_avg, hourly_std;  // over defined cells, population std
  std::optional<double> daily_avg, daily_std;
};

// Engagement for one state over one local-date window (must span at least
// seven days; throws otherwise).
EngagementRow engagement_for_window(std::span<const TweetRecord> records, State state,
                                    Date window_start, Date window_end,
                                    const ClockRuleTable& rules);

// One row per integer week offset in [-weeks_before, +weeks_after]; window 0
// starts on the anchor date itself.
std::vector<EngagementRow> weekly_window_series(std::span<const TweetRecord> records,
                                                State state, Date anchor,
                                                int weeks_before, int weeks_after,
                                                const ClockRuleTable& rules);

// States ranked by business-hour tweet volume within each state's own first
// anchor week; ties break alphabetically by abbreviation. States without an
// anchor date are skipped (returned in `skipped`).
struct StateRanking {
  std::vector<std::pair<State, std::uint64_t>> ranked;
  std::vector<State> skipped;
};

StateRanking rank_states_by_business_volume(std::span<const TweetRecord> records,
                                            const EventCalendar& calendar,
                                            AnchorKind anchor,
                                            const ClockRuleTable& rules);

}  // namespace tweetlab
