#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

#include "tweetlab/record.hpp"
#include "tweetlab/states.hpp"
#include "tweetlab/time.hpp"

namespace tweetlab {

// --- local-clock rules -------------------------------------------------------

// One rule per state: the dominant zone's standard offset plus whether the
// state observes daylight saving. The DST switch applies at date granularity.
struct StateClockRule {
  State state = State::AL;
  int std_offset_hours = 0;  // signed hours from UTC
  bool observes_dst = true;
  Date dst_start{2020, 3, 8};
  Date dst_end{2020, 11, 1};
};

class ClockRuleTable {
 public:
  // CSV: state,std_offset_hours,observes_dst[,dst_start,dst_end]
  static ClockRuleTable load(const std::string& path);

  const StateClockRule& rule(State s) const;  // throws when missing
  bool has(State s) const;

 private:
  std::map<State, StateClockRule> rules_;
};

struct LocalTime {
  Date date;
  int hour = 0;     // 0..23
  int weekday = 0;  // 1 = Monday .. 7 = Sunday (of the local date)
};

LocalTime to_local(UtcTime utc, State state, const ClockRuleTable& rules);

// --- phases -------------------------------------------------------------------

enum class PhaseId { P1, P2, P3 };

struct Phase {
  PhaseId id;
  Date start;
  Date end;  // inclusive
};

const std::array<Phase, 3>& phase_table();
Phase assign_phase(Date local_date);  // throws std::out_of_range outside the window
std::string_view phase_name(PhaseId id);

// --- hour-of-week histogram ------------------------------------------------------

inline constexpr int kBusinessFirstHour = 8;
inline constexpr int kBusinessLastHour = 16;  // 8:00-16:59, nine slots

// 7x24 counts; day 1 = Monday .. 7 = Sunday, hour 0..23.
class HourWeekMatrix {
 public:
  void add(int weekday, int hour, std::uint64_t n = 1);
  std::uint64_t at(int weekday, int hour) const;

  std::uint64_t day_total(int weekday) const;
  std::uint64_t workday_total() const;  // Mon..Fri
  std::uint64_t weekend_total() const;  // Sat..Sun
  std::uint64_t total() const;

  std::uint64_t workday_hour(int hour) const;  // sum over Mon..Fri
  std::uint64_t weekend_hour(int hour) const;  // sum over Sat..Sun
  std::uint64_t business_hours(int weekday) const;
  std::uint64_t weekend_business_hours() const;
  std::uint64_t business_hour_total() const;  // all seven days

  HourWeekMatrix& operator+=(const HourWeekMatrix& other);
  bool operator==(const HourWeekMatrix&) const = default;

 private:
  std::array<std::array<std::uint64_t, 24>, 7> counts_{};
};

// --- histogram building -----------------------------------------------------------

struct HistogramOptions {
  Date from;
  Date to;  // inclusive, in local time
  std::set<Date> exclude_dates;
};

struct Histograms {
  std::map<Date, std::uint64_t> daily_all;
  std::map<State, std::map<Date, std::uint64_t>> daily_by_state;
  HourWeekMatrix matrix_all;
  std::map<State, HourWeekMatrix> matrix_by_state;
  std::uint64_t in_window = 0;
};

Histograms build_histograms(std::span<const TweetRecord> records,
                            const ClockRuleTable& rules, const HistogramOptions& options);

// Per-hour signed gap between the normalized weekend and workday profiles.
// Positive means relatively more weekend tweeting at that hour. The 24 gaps
// sum to zero. Throws when either total is zero.
std::array<double, 24> workweek_gap_table(const HourWeekMatrix& matrix);

}  // namespace tweetlab
