#include "tweetlab/temporal.hpp"

#include <stdexcept>

#include "tweetlab/csv.hpp"
#include "tweetlab/util.hpp"

namespace tweetlab {

// --- clock rules ------------------------------------------------------------

ClockRuleTable ClockRuleTable::load(const std::string& path) {
  ClockRuleTable table;
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 3) throw std::runtime_error("bad clock rule row in " + path);
    const auto state = state_from_abbrev(row[0]);
    if (!state) throw std::runtime_error("unknown state in " + path + ": " + row[0]);
    StateClockRule rule;
    rule.state = *state;
    rule.std_offset_hours = std::stoi(row[1]);
    const std::string flag = to_lower_ascii(trim(row[2]));
    rule.observes_dst = flag == "true" || flag == "1" || flag == "yes";
    if (row.size() > 3 && !row[3].empty()) {
      const auto d = parse_date(row[3]);
      if (!d) throw std::runtime_error("bad dst_start in " + path);
      rule.dst_start = *d;
    }
    if (row.size() > 4 && !row[4].empty()) {
      const auto d = parse_date(row[4]);
      if (!d) throw std::runtime_error("bad dst_end in " + path);
      rule.dst_end = *d;
    }
    if (table.rules_.count(*state))
      throw std::runtime_error("duplicate clock rule for " + row[0]);
    table.rules_[*state] = rule;
  }
  if (table.rules_.empty()) throw std::runtime_error("empty clock rule table: " + path);
  return table;
}

const StateClockRule& ClockRuleTable::rule(State s) const {
  const auto it = rules_.find(s);
  if (it == rules_.end())
    throw std::runtime_error("no clock rule for state " + std::string(state_abbrev(s)));
  return it->second;
}

bool ClockRuleTable::has(State s) const { return rules_.count(s) > 0; }

LocalTime to_local(UtcTime utc, State state, const ClockRuleTable& rules) {
  const StateClockRule& rule = rules.rule(state);
  std::int64_t local_seconds = utc.seconds + std::int64_t(rule.std_offset_hours) * 3600;
  if (rule.observes_dst) {
    // Date-level switch: every hour of the local standard date on/after
    // dst_start (and before dst_end) runs one hour ahead.
    const Date std_date = utc_date(UtcTime{local_seconds});
    if (std_date >= rule.dst_start && std_date < rule.dst_end) local_seconds += 3600;
  }
  const UtcTime as_civil{local_seconds};
  LocalTime lt;
  lt.date = utc_date(as_civil);
  lt.hour = utc_hour(as_civil);
  lt.weekday = iso_weekday(lt.date);
  return lt;
}

// --- phases --------------------------------------------------------------------

const std::array<Phase, 3>& phase_table() {
  static const std::array<Phase, 3> phases = {
      Phase{PhaseId::P1, Date{2020, 1, 25}, Date{2020, 2, 24}},
      Phase{PhaseId::P2, Date{2020, 2, 25}, Date{2020, 3, 14}},
      Phase{PhaseId::P3, Date{2020, 3, 15}, Date{2020, 5, 10}},
  };
  return phases;
}

Phase assign_phase(Date local_date) {
  for (const auto& p : phase_table()) {
    if (local_date >= p.start && local_date <= p.end) return p;
  }
  throw std::out_of_range("date outside the observation window: " +
                          format_date(local_date));
}

std::string_view phase_name(PhaseId id) {
  switch (id) {
    case PhaseId::P1: return "P1";
    case PhaseId::P2: return "P2";
    default: return "P3";
  }
}

// --- hour-week matrix -------------------------------------------------------------

static void check_cell(int weekday, int hour) {
  if (weekday < 1 || weekday > 7 || hour < 0 || hour > 23)
    throw std::out_of_range("bad matrix cell");
}

void HourWeekMatrix::add(int weekday, int hour, std::uint64_t n) {
  check_cell(weekday, hour);
  counts_[static_cast<size_t>(weekday - 1)][static_cast<size_t>(hour)] += n;
}

std::uint64_t HourWeekMatrix::at(int weekday, int hour) const {
  check_cell(weekday, hour);
  return counts_[static_cast<size_t>(weekday - 1)][static_cast<size_t>(hour)];
}

std::uint64_t HourWeekMatrix::day_total(int weekday) const {
  check_cell(weekday, 0);
  std::uint64_t sum = 0;
  for (const auto c : counts_[static_cast<size_t>(weekday - 1)]) sum += c;
  return sum;
}

std::uint64_t HourWeekMatrix::workday_total() const {
  std::uint64_t sum = 0;
  for (int j = 1; j <= 5; ++j) sum += day_total(j);
  return sum;
}

std::uint64_t HourWeekMatrix::weekend_total() const {
  return day_total(6) + day_total(7);
}

std::uint64_t HourWeekMatrix::total() const { return workday_total() + weekend_total(); }

std::uint64_t HourWeekMatrix::workday_hour(int hour) const {
  std::uint64_t sum = 0;
  for (int j = 1; j <= 5; ++j) sum += at(j, hour);
  return sum;
}

std::uint64_t HourWeekMatrix::weekend_hour(int hour) const {
  return at(6, hour) + at(7, hour);
}

std::uint64_t HourWeekMatrix::business_hours(int weekday) const {
  std::uint64_t sum = 0;
  for (int i = kBusinessFirstHour; i <= kBusinessLastHour; ++i) sum += at(weekday, i);
  return sum;
}

std::uint64_t HourWeekMatrix::weekend_business_hours() const {
  return business_hours(6) + business_hours(7);
}

std::uint64_t HourWeekMatrix::business_hour_total() const {
  std::uint64_t sum = 0;
  for (int j = 1; j <= 7; ++j) sum += business_hours(j);
  return sum;
}

HourWeekMatrix& HourWeekMatrix::operator+=(const HourWeekMatrix& other) {
  for (size_t j = 0; j < 7; ++j)
    for (size_t i = 0; i < 24; ++i) counts_[j][i] += other.counts_[j][i];
  return *this;
}

// --- histogram building --------------------------------------------------------------

Histograms build_histograms(std::span<const TweetRecord> records,
                            const ClockRuleTable& rules,
                            const HistogramOptions& options) {
  if (options.to < options.from) throw std::invalid_argument("empty window");
  Histograms h;
  for (const auto& r : records) {
    if (!r.geo.state) continue;
    const LocalTime lt = to_local(r.created_at_utc, *r.geo.state, rules);
    if (lt.date < options.from || lt.date > options.to) continue;
    if (options.exclude_dates.count(lt.date)) continue;
    ++h.in_window;
    ++h.daily_all[lt.date];
    ++h.daily_by_state[*r.geo.state][lt.date];
    h.matrix_all.add(lt.weekday, lt.hour);
    h.matrix_by_state[*r.geo.state].add(lt.weekday, lt.hour);
  }
  return h;
}

std::array<double, 24> workweek_gap_table(const HourWeekMatrix& matrix) {
  const std::uint64_t t_workday = matrix.workday_total();
  const std::uint64_t t_weekend = matrix.weekend_total();
  if (t_workday == 0 || t_weekend == 0)
    throw std::runtime_error("workweek gap needs both workday and weekend volume");
  std::array<double, 24> gaps{};
  for (int i = 0; i < 24; ++i) {
    const double weekend_share =
        static_cast<double>(matrix.weekend_hour(i)) / static_cast<double>(t_weekend);
    const double workday_share =
        static_cast<double>(matrix.workday_hour(i)) / static_cast<double>(t_workday);
    gaps[static_cast<size_t>(i)] = weekend_share - workday_share;
  }
  return gaps;
}

}  // namespace tweetlab
