#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ddosfc/ingest.hpp"

namespace ddosfc {

/// An attack record reduced to the columns the analysis uses, plus the
/// derived duration, throughput and unit count.
struct EnrichedRecord {
  Subclass subclass = Subclass::kTotalTraffic;
  std::int64_t start_time = 0;  // Unix seconds, UTC
  std::int64_t stop_time = 0;
  double duration_min = 0.0;  // (stop - start) / 60
  double max_gbps = 0.0;      // max_bps / 1e9
  double count = 1.0;

  civil::Date start_date() const;
  int start_year() const { return start_date().year; }
};

EnrichedRecord enrich(const AttackRecord& record);
std::vector<EnrichedRecord> enrich_all(std::span<const AttackRecord> records);

enum class Granularity { kDaily, kWeekly, kMonthly, kYearly };

std::string_view to_string(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view text);

/// A calendar period identified by a dense ordinal, so consecutive periods
/// differ by exactly one:
///   daily   - days since 1970-01-01
///   weekly  - weeks since the ISO week starting Monday 1969-12-29
///   monthly - year * 12 + (month - 1)
///   yearly  - the year
struct PeriodKey {
  Granularity granularity = Granularity::kDaily;
  std::int64_t ordinal = 0;

  friend bool operator==(const PeriodKey&, const PeriodKey&) = default;
  friend auto operator<=>(const PeriodKey&, const PeriodKey&) = default;

  PeriodKey next() const { return {granularity, ordinal + 1}; }

  /// YYYY-MM-DD, YYYY-Www, YYYY-MM or YYYY.
  std::string label() const;

  /// First day (day number) covered by the period.
  std::int64_t first_day() const;
};

PeriodKey period_of(std::int64_t unix_seconds, Granularity g);

struct AggregateCell {
  double count_sum = 0.0;
  double duration_mean = 0.0;  // minutes
  double gbps_mean = 0.0;
  std::uint64_t n = 0;
};

struct AggregateTable {
  Granularity granularity = Granularity::kDaily;
  std::map<std::pair<PeriodKey, Subclass>, AggregateCell> rows;

  bool empty() const { return rows.empty(); }
  PeriodKey first_period() const;
  PeriodKey last_period() const;
};

/// Groups by (period of start_time, subclass). Means are taken over the
/// records in each cell directly, never over finer-grained means.
AggregateTable aggregate(std::span<const EnrichedRecord> records, Granularity g);

enum class Metric { kCount, kDurationMin, kMaxGbps };

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view text);

double metric_value(const AggregateCell& cell, Metric m);

enum class GapPolicy { kZeroFill, kSkip };

struct TimeSeries {
  Subclass subclass = Subclass::kTotalTraffic;
  Metric metric = Metric::kCount;
  Granularity granularity = Granularity::kDaily;
  std::vector<PeriodKey> periods;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Extracts one subclass/metric series spanning the table's first to last
/// occupied period. With kZeroFill, periods without attacks of that subclass
/// contribute 0.0; with kSkip they are omitted (the result is then not
/// contiguous). Throws SubclassAbsent if the subclass never occurs.
TimeSeries series_for(const AggregateTable& table, Subclass subclass, Metric metric,
                      GapPolicy gaps = GapPolicy::kZeroFill);

/// granularity,period,subclass,count_sum,duration_mean_min,gbps_mean
std::string to_csv(const AggregateTable& table);

}  // namespace ddosfc
