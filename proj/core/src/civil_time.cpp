#include "ddosfc/civil_time.hpp"

#include <cstdio>

namespace ddosfc::civil {

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(const Date& d) {
  const std::int64_t y = static_cast<std::int64_t>(d.year) - (d.month <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (static_cast<std::int64_t>(d.month) + 9) % 12;
  const std::int64_t doy = (153 * mp + 2) / 5 + static_cast<std::int64_t>(d.day) - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t days) {
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t y = yoe + era * 400 + (m <= 2 ? 1 : 0);
  return Date{static_cast<int>(y), static_cast<unsigned>(m), static_cast<unsigned>(d)};
}

std::int64_t day_of(std::int64_t unix_seconds) {
  std::int64_t q = unix_seconds / 86400;
  if (unix_seconds % 86400 < 0) --q;
  return q;
}

unsigned weekday_of(std::int64_t days) {
  // 1970-01-01 was a Thursday (index 3).
  std::int64_t w = (days + 3) % 7;
  if (w < 0) w += 7;
  return static_cast<unsigned>(w);
}

std::int64_t monday_of(const IsoWeek& w) {
  // Week 1 is the week containing January 4th.
  const std::int64_t jan4 = days_from_civil(Date{w.year, 1, 4});
  const std::int64_t week1_monday = jan4 - weekday_of(jan4);
  return week1_monday + 7 * (static_cast<std::int64_t>(w.week) - 1);
}

IsoWeek iso_week_of(std::int64_t days) {
  // The ISO year is the calendar year of the Thursday in the same week.
  const std::int64_t thursday = days - weekday_of(days) + 3;
  const int iso_year = civil_from_days(thursday).year;
  const std::int64_t week1_monday = monday_of(IsoWeek{iso_year, 1});
  const std::int64_t monday = days - weekday_of(days);
  return IsoWeek{iso_year, static_cast<unsigned>((monday - week1_monday) / 7 + 1)};
}

std::string format_date(const Date& d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

std::string format_timestamp(std::int64_t unix_seconds) {
  const std::int64_t days = day_of(unix_seconds);
  const std::int64_t secs = unix_seconds - days * 86400;
  const Date d = civil_from_days(days);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", d.year, d.month, d.day,
                static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                static_cast<int>(secs % 60));
  return buf;
}

bool parse_date(const std::string& text, Date& out) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) return false;
  if (m < 1 || m > 12 || d < 1 || d > 31) return false;
  const Date candidate{y, m, d};
  // Reject dates like 2021-02-30 that would silently roll over.
  if (civil_from_days(days_from_civil(candidate)) != candidate) return false;
  out = candidate;
  return true;
}

}  // namespace ddosfc::civil
