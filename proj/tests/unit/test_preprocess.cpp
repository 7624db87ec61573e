#include <time.h>

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "ddosfc/error.hpp"
#include "ddosfc/ingest.hpp"
#include "ddosfc/preprocess.hpp"
#include "ddosfc/random.hpp"
#include "doctest.h"

using namespace ddosfc;

namespace {

constexpr std::int64_t kJan1_2020 = 1577836800;

EnrichedRecord rec(Subclass s, std::int64_t start, double minutes, double gbps = 1.0) {
  AttackRecord r;
  r.subclass = s;
  r.start = start;
  r.stop = start + static_cast<std::int64_t>(minutes * 60);
  r.max_bps = static_cast<std::uint64_t>(gbps * 1e9);
  return enrich(r);
}

// Label by the C library rather than by our own calendar code.
std::string libc_label(std::int64_t t, Granularity g) {
  const time_t tt = static_cast<time_t>(t);
  tm parts{};
  gmtime_r(&tt, &parts);
  const char* fmt = g == Granularity::kDaily     ? "%Y-%m-%d"
                    : g == Granularity::kWeekly  ? "%G-W%V"
                    : g == Granularity::kMonthly ? "%Y-%m"
                                                 : "%Y";
  char buf[32];
  strftime(buf, sizeof buf, fmt, &parts);
  return buf;
}

struct OracleCell {
  std::uint64_t n = 0;
  double duration_sum = 0.0;
  double gbps_sum = 0.0;
};

bool close_rel(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("enrich conversions") {
  AttackRecord r;
  r.start = 1500000000;
  r.stop = r.start + 604944;
  r.max_bps = 1460000000000ULL;
  const EnrichedRecord e = enrich(r);
  CHECK(e.duration_min == doctest::Approx(10082.4).epsilon(1e-12));
  CHECK(e.max_gbps == 1460.0);
  CHECK(e.count == 1.0);

  r.stop = r.start;
  CHECK(enrich(r).duration_min == 0.0);
  CHECK(enrich(r).count == 1.0);
}

TEST_CASE("aggregate: same-day cell") {
  const std::vector<EnrichedRecord> records{
      rec(Subclass::kTotalTraffic, kJan1_2020 + 100, 10),
      rec(Subclass::kTotalTraffic, kJan1_2020 + 5000, 20),
  };
  const AggregateTable t = aggregate(records, Granularity::kDaily);
  REQUIRE(t.rows.size() == 1);
  const AggregateCell& cell = t.rows.begin()->second;
  CHECK(cell.count_sum == 2.0);
  CHECK(cell.duration_mean == 15.0);
  CHECK(cell.n == 2);
  CHECK(aggregate({}, Granularity::kWeekly).empty());
}

TEST_CASE("aggregate: coarse means are record-weighted") {
  const std::vector<EnrichedRecord> records{
      rec(Subclass::kICMP, kJan1_2020, 10),
      rec(Subclass::kICMP, kJan1_2020 + 60, 20),
      rec(Subclass::kICMP, kJan1_2020 + 86400, 60),
  };
  const AggregateTable monthly = aggregate(records, Granularity::kMonthly);
  REQUIRE(monthly.rows.size() == 1);
  CHECK(monthly.rows.begin()->second.duration_mean == 30.0);

  const AggregateTable daily = aggregate(records, Granularity::kDaily);
  REQUIRE(daily.rows.size() == 2);
  double mean_of_means = 0.0;
  for (const auto& [key, cell] : daily.rows) mean_of_means += cell.duration_mean / 2.0;
  CHECK(mean_of_means == 37.5);
}

TEST_CASE("aggregate buckets by start time in UTC") {
  // Spans midnight; belongs to its start day only.
  const std::vector<EnrichedRecord> records{rec(Subclass::kICMP, kJan1_2020 - 60, 120)};
  const AggregateTable t = aggregate(records, Granularity::kDaily);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows.begin()->first.first.label() == "2019-12-31");
}

TEST_CASE("period labels and ordinals") {
  CHECK(period_of(kJan1_2020, Granularity::kDaily).label() == "2020-01-01");
  CHECK(period_of(kJan1_2020, Granularity::kWeekly).label() == "2020-W01");
  CHECK(period_of(kJan1_2020, Granularity::kMonthly).label() == "2020-01");
  CHECK(period_of(kJan1_2020, Granularity::kYearly).label() == "2020");
  // 2021-01-01 is in the last ISO week of 2020.
  CHECK(period_of(1609459200, Granularity::kWeekly).label() == "2020-W53");
  CHECK(period_of(1609459200, Granularity::kWeekly).next().label() == "2021-W01");
  CHECK(period_of(1609459200, Granularity::kMonthly).next().label() == "2021-02");
  CHECK(PeriodKey{Granularity::kMonthly, 2020 * 12 + 11}.next().label() == "2021-01");
  CHECK(period_of(0, Granularity::kWeekly).ordinal == 0);
  CHECK(period_of(0, Granularity::kWeekly).first_day() == -3);

  for (Granularity g : {Granularity::kDaily, Granularity::kWeekly, Granularity::kMonthly,
                        Granularity::kYearly}) {
    CHECK(parse_granularity(to_string(g)) == g);
    const PeriodKey k = period_of(kJan1_2020 + 40 * 86400, g);
    CHECK(period_of(k.first_day() * 86400, g) == k);
    CHECK(period_of(k.next().first_day() * 86400 - 1, g) == k);
  }
}

TEST_CASE("series_for gap fill and skip") {
  std::vector<EnrichedRecord> records;
  for (int i = 0; i < 5; ++i) records.push_back(rec(Subclass::kTotalTraffic, kJan1_2020 + i, 4));
  for (int i = 0; i < 7; ++i)
    records.push_back(rec(Subclass::kTotalTraffic, kJan1_2020 + 2 * 86400 + i, 8));
  const AggregateTable t = aggregate(records, Granularity::kDaily);

  const TimeSeries s = series_for(t, Subclass::kTotalTraffic, Metric::kCount);
  CHECK(s.values == std::vector<double>{5.0, 0.0, 7.0});
  REQUIRE(s.periods.size() == 3);
  CHECK(s.periods[1].label() == "2020-01-02");

  CHECK(series_for(t, Subclass::kTotalTraffic, Metric::kDurationMin).values ==
        std::vector<double>{4.0, 0.0, 8.0});
  CHECK(series_for(t, Subclass::kTotalTraffic, Metric::kCount, GapPolicy::kSkip).values ==
        std::vector<double>{5.0, 7.0});

  const AggregateTable single = aggregate({&records[0], 1}, Granularity::kYearly);
  CHECK(series_for(single, Subclass::kTotalTraffic, Metric::kMaxGbps).values ==
        std::vector<double>{1.0});

  try {
    series_for(t, Subclass::kDNSMisuse, Metric::kCount);
    FAIL("expected SubclassAbsent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSubclassAbsent);
  }
}

TEST_CASE("series_for spans the whole table, not just the subclass") {
  const std::vector<EnrichedRecord> records{
      rec(Subclass::kICMP, kJan1_2020, 1),
      rec(Subclass::kTCPSYN, kJan1_2020 + 86400, 1),
      rec(Subclass::kICMP, kJan1_2020 + 3 * 86400, 1),
  };
  const AggregateTable t = aggregate(records, Granularity::kDaily);
  CHECK(series_for(t, Subclass::kTCPSYN, Metric::kCount).values ==
        std::vector<double>{0.0, 1.0, 0.0, 0.0});
}

TEST_CASE("property: aggregate matches a brute-force group-by") {
  Rng rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    SyntheticSpec spec;
    spec.record_count = trial == 0 ? 10000 : 1 + rng.below(3000);
    spec.seed = rng.next();
    const auto enriched = enrich_all(generate_synthetic(spec));

    for (Granularity g : {Granularity::kDaily, Granularity::kWeekly, Granularity::kMonthly,
                          Granularity::kYearly}) {
      std::map<std::pair<std::string, Subclass>, OracleCell> oracle;
      for (const auto& r : enriched) {
        OracleCell& c = oracle[{libc_label(r.start_time, g), r.subclass}];
        ++c.n;
        c.duration_sum += r.duration_min;
        c.gbps_sum += r.max_gbps;
      }
      const AggregateTable t = aggregate(enriched, g);
      REQUIRE(t.rows.size() == oracle.size());
      double total = 0.0;
      for (const auto& [key, cell] : t.rows) {
        const auto it = oracle.find({key.first.label(), key.second});
        REQUIRE(it != oracle.end());
        REQUIRE(cell.count_sum == static_cast<double>(it->second.n));
        REQUIRE(close_rel(cell.duration_mean, it->second.duration_sum / it->second.n));
        REQUIRE(close_rel(cell.gbps_mean, it->second.gbps_sum / it->second.n));
        total += cell.count_sum;
      }
      // Conservation of counts.
      CHECK(total == static_cast<double>(enriched.size()));

      // Series length covers every period between the first and last occupied one.
      const Subclass s = t.rows.begin()->first.second;
      const TimeSeries series = series_for(t, s, Metric::kCount);
      CHECK(static_cast<std::int64_t>(series.size()) ==
            t.last_period().ordinal - t.first_period().ordinal + 1);
    }
  }
}

TEST_CASE("property: yearly counts nest over daily counts") {
  SyntheticSpec spec;
  spec.record_count = 5000;
  spec.seed = 3;
  const auto enriched = enrich_all(generate_synthetic(spec));
  const AggregateTable daily = aggregate(enriched, Granularity::kDaily);
  const AggregateTable yearly = aggregate(enriched, Granularity::kYearly);
  std::map<std::pair<int, Subclass>, double> summed;
  for (const auto& [key, cell] : daily.rows) {
    const int year = civil::civil_from_days(key.first.first_day()).year;
    summed[{year, key.second}] += cell.count_sum;
  }
  REQUIRE(summed.size() == yearly.rows.size());
  for (const auto& [key, cell] : yearly.rows) {
    CHECK(summed.at({static_cast<int>(key.first.ordinal), key.second}) == cell.count_sum);
  }
}

TEST_CASE("aggregate csv export") {
  const std::vector<EnrichedRecord> records{rec(Subclass::kUDPMisuse, kJan1_2020, 10, 2.5)};
  CHECK(to_csv(aggregate(records, Granularity::kWeekly)) ==
        "granularity,period,subclass,count_sum,duration_mean_min,gbps_mean\n"
        "weekly,2020-W01,UDPMisuse,1,10,2.5\n");
}
