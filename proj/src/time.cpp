#include "tweetlab/time.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>

namespace tweetlab {

std::int64_t days_from_civil(Date d) {
  std::int64_t y = d.year;
  const int m = d.month;
  const int dd = d.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);                       // [0, 399]
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                       static_cast<unsigned>(dd) - 1;                              // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                      // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);                    // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;      // [0, 399]
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                    // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                         // [0, 11]
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;                                 // [1, 31]
  const unsigned m = mp + (mp < 10 ? 3 : -9);                                      // [1, 12]
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int iso_weekday(Date d) {
  // 1970-01-01 was a Thursday.
  const std::int64_t days = days_from_civil(d);
  return static_cast<int>(((days % 7) + 10) % 7) + 1;
}

Date add_days(Date d, int n) { return civil_from_days(days_from_civil(d) + n); }

std::int64_t days_between(Date from, Date to) {
  return days_from_civil(to) - days_from_civil(from);
}

static bool parse_int(std::string_view s, size_t pos, size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (size_t i = 0; i < len; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

static bool valid_date(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr std::array<int, 12> dim = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int max = dim[static_cast<size_t>(m - 1)];
  if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) max = 29;
  return d <= max;
}

std::optional<Date> parse_date(std::string_view s) {
  int y, m, d;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_int(s, 0, 4, y) || !parse_int(s, 5, 2, m) || !parse_int(s, 8, 2, d))
    return std::nullopt;
  if (!valid_date(y, m, d)) return std::nullopt;
  return Date{y, m, d};
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return std::string(buf);
}

static std::optional<int> month_from_abbrev(std::string_view a) {
  static constexpr std::array<std::string_view, 12> names = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (size_t i = 0; i < names.size(); ++i)
    if (a == names[i]) return static_cast<int>(i) + 1;
  return std::nullopt;
}

static std::optional<UtcTime> parse_iso(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SSZ (also accepts a space separator and missing Z)
  if (s.size() < 19) return std::nullopt;
  int y, mo, d, h, mi, se;
  if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':')
    return std::nullopt;
  if (!parse_int(s, 0, 4, y) || !parse_int(s, 5, 2, mo) || !parse_int(s, 8, 2, d) ||
      !parse_int(s, 11, 2, h) || !parse_int(s, 14, 2, mi) || !parse_int(s, 17, 2, se))
    return std::nullopt;
  if (s.size() > 19 && s.substr(19) != "Z") return std::nullopt;
  if (!valid_date(y, mo, d) || h > 23 || mi > 59 || se > 60) return std::nullopt;
  return utc_from_civil(Date{y, mo, d}, h, mi, se);
}

static std::optional<UtcTime> parse_twitter(std::string_view s) {
  // "Sun Mar 01 15:04:05 +0000 2020"
  if (s.size() != 30) return std::nullopt;
  if (s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' || s[25] != ' ')
    return std::nullopt;
  const auto mo = month_from_abbrev(s.substr(4, 3));
  if (!mo) return std::nullopt;
  if (s.substr(20, 5) != "+0000") return std::nullopt;
  int d, h, mi, se, y;
  if (!parse_int(s, 8, 2, d) || !parse_int(s, 11, 2, h) || !parse_int(s, 14, 2, mi) ||
      !parse_int(s, 17, 2, se) || !parse_int(s, 26, 4, y))
    return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  if (!valid_date(y, *mo, d) || h > 23 || mi > 59 || se > 60) return std::nullopt;
  return utc_from_civil(Date{y, *mo, d}, h, mi, se);
}

std::optional<UtcTime> parse_timestamp(std::string_view s) {
  if (auto t = parse_iso(s)) return t;
  return parse_twitter(s);
}

std::string format_timestamp(UtcTime t) {
  const std::int64_t days =
      t.seconds >= 0 ? t.seconds / 86400 : (t.seconds - 86399) / 86400;
  const std::int64_t sod = t.seconds - days * 86400;
  const Date d = civil_from_days(days);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                static_cast<int>(sod % 60));
  return std::string(buf);
}

Date utc_date(UtcTime t) {
  const std::int64_t days =
      t.seconds >= 0 ? t.seconds / 86400 : (t.seconds - 86399) / 86400;
  return civil_from_days(days);
}

int utc_hour(UtcTime t) {
  const std::int64_t days =
      t.seconds >= 0 ? t.seconds / 86400 : (t.seconds - 86399) / 86400;
  return static_cast<int>((t.seconds - days * 86400) / 3600);
}

UtcTime utc_from_civil(Date d, int hour, int minute, int second) {
  return UtcTime{days_from_civil(d) * 86400 + hour * 3600 + minute * 60 + second};
}

}  // namespace tweetlab
