#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tweetlab {

// Plain civil calendar date (proleptic Gregorian), no time zone attached.
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(Date d);
Date civil_from_days(std::int64_t days);

int iso_weekday(Date d);  // 1 = Monday .. 7 = Sunday
Date add_days(Date d, int n);
std::int64_t days_between(Date from, Date to);  // to - from

std::optional<Date> parse_date(std::string_view s);  // "YYYY-MM-DD"
std::string format_date(Date d);

// UTC instant at second precision.
struct UtcTime {
  std::int64_t seconds = 0;  // since the Unix epoch

  auto operator<=>(const UtcTime&) const = default;
};

// Accepts ISO 8601 ("2020-03-01T15:04:05Z") and the classic Twitter
// created_at format ("Sun Mar 01 15:04:05 +0000 2020").
std::optional<UtcTime> parse_timestamp(std::string_view s);
std::string format_timestamp(UtcTime t);  // ISO 8601 Z

Date utc_date(UtcTime t);
int utc_hour(UtcTime t);
UtcTime utc_from_civil(Date d, int hour = 0, int minute = 0, int second = 0);

}  // namespace tweetlab
