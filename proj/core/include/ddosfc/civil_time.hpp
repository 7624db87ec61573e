#pragma once

#include <cstdint>
#include <string>

// Proleptic Gregorian calendar arithmetic on UTC Unix time. Day numbers count
// from 1970-01-01 (day 0); negative values are valid.
namespace ddosfc::civil {

struct Date {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date&, const Date&) = default;
};

struct IsoWeek {
  int year = 1970;  // ISO week-numbering year, may differ from the calendar year
  unsigned week = 1;  // 1..53
};

std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

/// Floor division of a Unix timestamp (seconds) into a day number.
std::int64_t day_of(std::int64_t unix_seconds);

/// 0 = Monday ... 6 = Sunday.
unsigned weekday_of(std::int64_t days);

IsoWeek iso_week_of(std::int64_t days);

/// Day number of the Monday starting the given ISO week.
std::int64_t monday_of(const IsoWeek& w);

/// "YYYY-MM-DD"
std::string format_date(const Date& d);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(std::int64_t unix_seconds);

/// Parses "YYYY-MM-DD"; returns false on malformed or out-of-range input.
bool parse_date(const std::string& text, Date& out);

}  // namespace ddosfc::civil
