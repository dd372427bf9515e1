#include "tweetlab/engagement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tweetlab/csv.hpp"

namespace tweetlab {

// --- event calendar ----------------------------------------------------------

EventCalendar EventCalendar::load(const std::string& path) {
  EventCalendar cal;
  for (const auto& row : csv_read_file(path)) {
    if (row.empty()) continue;
    const auto state = state_from_abbrev(row[0]);
    if (!state) throw std::runtime_error("unknown state in " + path + ": " + row[0]);
    std::optional<Date> lockdown, reopen;
    if (row.size() > 1 && !row[1].empty()) {
      lockdown = parse_date(row[1]);
      if (!lockdown) throw std::runtime_error("bad lockdown date in " + path);
    }
    if (row.size() > 2 && !row[2].empty()) {
      reopen = parse_date(row[2]);
      if (!reopen) throw std::runtime_error("bad reopen date in " + path);
    }
    if (lockdown && reopen && !(*reopen > *lockdown))
      throw std::runtime_error("reopen date not after lockdown for " + row[0]);
    cal.entries_[*state] = Entry{lockdown, reopen};
  }
  return cal;
}

void EventCalendar::set(State s, std::optional<Date> lockdown,
                        std::optional<Date> reopen) {
  entries_[s] = Entry{lockdown, reopen};
}

std::optional<Date> EventCalendar::anchor(State s, AnchorKind kind) const {
  const auto it = entries_.find(s);
  if (it == entries_.end()) return std::nullopt;
  return kind == AnchorKind::lockdown ? it->second.lockdown : it->second.reopen;
}

std::vector<State> EventCalendar::states_with(AnchorKind kind) const {
  std::vector<State> out;
  for (const auto& [state, entry] : entries_) {
    if (kind == AnchorKind::lockdown ? entry.lockdown.has_value()
                                     : entry.reopen.has_value())
      out.push_back(state);
  }
  return out;
}

// --- indices --------------------------------------------------------------------

std::optional<double> hourly_engagement(const HourWeekMatrix& matrix, int hour) {
  const std::uint64_t t_weekend = matrix.weekend_total();
  const std::uint64_t t_workday = matrix.workday_total();
  if (t_weekend == 0 || t_workday == 0) return std::nullopt;
  const std::uint64_t weekend = matrix.weekend_hour(hour);
  const std::uint64_t workday = matrix.workday_hour(hour);
  if (workday == 0) return std::nullopt;  // missing, deliberately not -1
  const double weekend_share =
      static_cast<double>(weekend) / static_cast<double>(t_weekend);
  const double workday_share =
      static_cast<double>(workday) / static_cast<double>(t_workday);
  return weekend_share / workday_share - 1.0;
}

std::optional<double> daily_engagement(const HourWeekMatrix& matrix, int weekday) {
  if (weekday < 1 || weekday > 5) throw std::out_of_range("weekday must be 1..5");
  const std::uint64_t t_weekend = matrix.weekend_total();
  const std::uint64_t t_day = matrix.day_total(weekday);
  if (t_weekend == 0 || matrix.workday_total() == 0) return std::nullopt;
  if (t_day == 0) return std::nullopt;
  const std::uint64_t day_business = matrix.business_hours(weekday);
  if (day_business == 0) return std::nullopt;
  const double weekend_share = static_cast<double>(matrix.weekend_business_hours()) /
                               static_cast<double>(t_weekend);
  const double day_share =
      static_cast<double>(day_business) / static_cast<double>(t_day);
  return weekend_share / day_share - 1.0;
}

namespace {

template <size_t N>
void fill_stats(const std::array<std::optional<double>, N>& cells,
                std::optional<double>& avg, std::optional<double>& stddev) {
  double sum = 0.0;
  size_t n = 0;
  for (const auto& c : cells) {
    if (c) {
      sum += *c;
      ++n;
    }
  }
  if (n == 0) {
    avg = std::nullopt;
    stddev = std::nullopt;
    return;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto& c : cells) {
    if (c) ss += (*c - mean) * (*c - mean);
  }
  avg = mean;
  stddev = std::sqrt(ss / static_cast<double>(n));
}

}  // namespace

EngagementRow engagement_for_window(std::span<const TweetRecord> records, State state,
                                    Date window_start, Date window_end,
                                    const ClockRuleTable& rules) {
  if (days_between(window_start, window_end) + 1 < 7)
    throw std::invalid_argument("engagement window must span at least seven days");

  HourWeekMatrix matrix;
  for (const auto& r : records) {
    if (r.geo.state != state) continue;
    const LocalTime lt = to_local(r.created_at_utc, state, rules);
    if (lt.date < window_start || lt.date > window_end) continue;
    matrix.add(lt.weekday, lt.hour);
  }

  EngagementRow row;
  row.state = state;
  row.window_start = window_start;
  row.window_end = window_end;
  row.business_tweets = matrix.business_hour_total();
  for (int i = 0; i < kBusinessHourSlots; ++i)
    row.hourly[static_cast<size_t>(i)] =
        hourly_engagement(matrix, kBusinessFirstHour + i);
  for (int j = 1; j <= 5; ++j)
    row.daily[static_cast<size_t>(j - 1)] = daily_engagement(matrix, j);
  fill_stats(row.hourly, row.hourly_avg, row.hourly_std);
  fill_stats(row.daily, row.daily_avg, row.daily_std);
  return row;
}

std::vector<EngagementRow> weekly_window_series(std::span<const TweetRecord> records,
                                                State state, Date anchor,
                                                int weeks_before, int weeks_after,
                                                const ClockRuleTable& rules) {
  std::vector<EngagementRow> rows;
  for (int w = -weeks_before; w <= weeks_after; ++w) {
    const Date start = add_days(anchor, w * 7);
    const Date end = add_days(start, 6);
    EngagementRow row = engagement_for_window(records, state, start, end, rules);
    row.week_offset = w;
    rows.push_back(row);
  }
  return rows;
}

StateRanking rank_states_by_business_volume(std::span<const TweetRecord> records,
                                            const EventCalendar& calendar,
                                            AnchorKind anchor,
                                            const ClockRuleTable& rules) {
  StateRanking out;
  std::map<State, std::uint64_t> volume;
  for (const State s : all_states()) {
    const auto date = calendar.anchor(s, anchor);
    if (!date) continue;
    volume[s] = 0;
  }
  for (const auto& r : records) {
    if (!r.geo.state) continue;
    const auto it = volume.find(*r.geo.state);
    if (it == volume.end()) continue;
    const Date start = *calendar.anchor(*r.geo.state, anchor);
    const Date end = add_days(start, 6);
    const LocalTime lt = to_local(r.created_at_utc, *r.geo.state, rules);
    if (lt.date < start || lt.date > end) continue;
    if (lt.hour < kBusinessFirstHour || lt.hour > kBusinessLastHour) continue;
    ++it->second;
  }
  for (const auto& [state, count] : volume) out.ranked.emplace_back(state, count);
  std::sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return state_abbrev(a.first) < state_abbrev(b.first);
  });
  for (const State s : all_states()) {
    if (!calendar.anchor(s, anchor)) out.skipped.push_back(s);
  }
  return out;
}

}  // namespace tweetlab
