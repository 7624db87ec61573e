#include <ctime>

#include "ddosfc/civil_time.hpp"
#include "ddosfc/random.hpp"
#include "doctest.h"

using namespace ddosfc::civil;

TEST_CASE("day numbers of known dates") {
  CHECK(days_from_civil({1970, 1, 1}) == 0);
  CHECK(days_from_civil({2020, 12, 31}) == 18627);
  CHECK(days_from_civil({2026, 10, 15}) == 20741);
  CHECK(civil_from_days(16436) == Date{2015, 1, 1});
  CHECK(civil_from_days(-1) == Date{1969, 12, 31});
}

TEST_CASE("iso weeks around year boundaries") {
  struct Case {
    Date date;
    int year;
    unsigned week;
  };
  // Reference values from Python's datetime.date.isocalendar().
  const Case cases[] = {
      {{2020, 12, 31}, 2020, 53}, {{2021, 1, 3}, 2020, 53}, {{2021, 1, 4}, 2021, 1},
      {{2019, 12, 30}, 2020, 1},  {{2015, 1, 1}, 2015, 1},  {{2016, 1, 3}, 2015, 53},
      {{1970, 1, 1}, 1970, 1},    {{2026, 10, 15}, 2026, 42},
  };
  for (const auto& c : cases) {
    const IsoWeek w = iso_week_of(days_from_civil(c.date));
    CHECK(w.year == c.year);
    CHECK(w.week == c.week);
  }
}

TEST_CASE("calendar arithmetic agrees with gmtime over random timestamps") {
  ddosfc::Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::int64_t t = rng.between(0, 4102444800LL);  // 1970..2100
    const std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    const std::int64_t day = day_of(t);
    const Date d = civil_from_days(day);
    REQUIRE(d.year == tm.tm_year + 1900);
    REQUIRE(d.month == static_cast<unsigned>(tm.tm_mon + 1));
    REQUIRE(d.day == static_cast<unsigned>(tm.tm_mday));
    REQUIRE(days_from_civil(d) == day);
    REQUIRE(weekday_of(day) == static_cast<unsigned>((tm.tm_wday + 6) % 7));
    char iso[16];
    std::strftime(iso, sizeof iso, "%G %V", &tm);
    const IsoWeek w = iso_week_of(day);
    char mine[16];
    std::snprintf(mine, sizeof mine, "%04d %02u", w.year, w.week);
    REQUIRE(std::string(iso) == std::string(mine));
  }
}

TEST_CASE("day_of floors negative timestamps") {
  CHECK(day_of(-1) == -1);
  CHECK(day_of(-86400) == -1);
  CHECK(day_of(86399) == 0);
}

TEST_CASE("date parsing rejects rollover dates") {
  Date d;
  CHECK(parse_date("2021-05-01", d));
  CHECK(d == Date{2021, 5, 1});
  CHECK_FALSE(parse_date("2021-02-30", d));
  CHECK_FALSE(parse_date("2021-13-01", d));
  CHECK_FALSE(parse_date("2021-05-01x", d));
  CHECK_FALSE(parse_date("yesterday", d));
}

TEST_CASE("timestamp formatting") {
  CHECK(format_timestamp(1577836800) == "2020-01-01T00:00:00Z");
  CHECK(format_timestamp(1577837400) == "2020-01-01T00:10:00Z");
}
