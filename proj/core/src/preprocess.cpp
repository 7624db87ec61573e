#include "ddosfc/preprocess.hpp"

#include <cstdio>

#include "ddosfc/csv.hpp"
#include "ddosfc/error.hpp"

namespace ddosfc {

namespace {

// Monday 1969-12-29 opens the ISO week that contains 1970-01-01.
constexpr std::int64_t kWeekEpochDay = -3;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

civil::Date EnrichedRecord::start_date() const {
  return civil::civil_from_days(civil::day_of(start_time));
}

EnrichedRecord enrich(const AttackRecord& record) {
  EnrichedRecord e;
  e.subclass = record.subclass;
  e.start_time = record.start;
  e.stop_time = record.stop;
  e.duration_min = static_cast<double>(record.stop - record.start) / 60.0;
  e.max_gbps = static_cast<double>(record.max_bps) / 1e9;
  e.count = 1.0;
  return e;
}

std::vector<EnrichedRecord> enrich_all(std::span<const AttackRecord> records) {
  std::vector<EnrichedRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(enrich(r));
  return out;
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::kDaily: return "daily";
    case Granularity::kWeekly: return "weekly";
    case Granularity::kMonthly: return "monthly";
    case Granularity::kYearly: return "yearly";
  }
  return "?";
}

std::optional<Granularity> parse_granularity(std::string_view text) {
  for (auto g : {Granularity::kDaily, Granularity::kWeekly, Granularity::kMonthly,
                 Granularity::kYearly}) {
    if (to_string(g) == text) return g;
  }
  return std::nullopt;
}

PeriodKey period_of(std::int64_t unix_seconds, Granularity g) {
  const std::int64_t day = civil::day_of(unix_seconds);
  switch (g) {
    case Granularity::kDaily:
      return {g, day};
    case Granularity::kWeekly:
      return {g, floor_div(day - kWeekEpochDay, 7)};
    case Granularity::kMonthly: {
      const civil::Date d = civil::civil_from_days(day);
      return {g, static_cast<std::int64_t>(d.year) * 12 + (d.month - 1)};
    }
    case Granularity::kYearly:
      return {g, civil::civil_from_days(day).year};
  }
  return {g, day};
}

std::int64_t PeriodKey::first_day() const {
  switch (granularity) {
    case Granularity::kDaily:
      return ordinal;
    case Granularity::kWeekly:
      return kWeekEpochDay + ordinal * 7;
    case Granularity::kMonthly: {
      const std::int64_t year = floor_div(ordinal, 12);
      return civil::days_from_civil(
          {static_cast<int>(year), static_cast<unsigned>(ordinal - year * 12 + 1), 1});
    }
    case Granularity::kYearly:
      return civil::days_from_civil({static_cast<int>(ordinal), 1, 1});
  }
  return ordinal;
}

std::string PeriodKey::label() const {
  char buf[32];
  switch (granularity) {
    case Granularity::kDaily:
      return civil::format_date(civil::civil_from_days(ordinal));
    case Granularity::kWeekly: {
      const civil::IsoWeek w = civil::iso_week_of(first_day());
      std::snprintf(buf, sizeof buf, "%04d-W%02u", w.year, w.week);
      return buf;
    }
    case Granularity::kMonthly: {
      const civil::Date d = civil::civil_from_days(first_day());
      std::snprintf(buf, sizeof buf, "%04d-%02u", d.year, d.month);
      return buf;
    }
    case Granularity::kYearly:
      std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(ordinal));
      return buf;
  }
  return {};
}

PeriodKey AggregateTable::first_period() const {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "aggregate table is empty");
  return rows.begin()->first.first;
}

PeriodKey AggregateTable::last_period() const {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "aggregate table is empty");
  return rows.rbegin()->first.first;
}

AggregateTable aggregate(std::span<const EnrichedRecord> records, Granularity g) {
  struct Sums {
    double count = 0.0;
    double duration = 0.0;
    double gbps = 0.0;
    std::uint64_t n = 0;
  };
  std::map<std::pair<PeriodKey, Subclass>, Sums> sums;
  for (const auto& r : records) {
    Sums& s = sums[{period_of(r.start_time, g), r.subclass}];
    s.count += r.count;
    s.duration += r.duration_min;
    s.gbps += r.max_gbps;
    ++s.n;
  }
  AggregateTable table;
  table.granularity = g;
  for (const auto& [key, s] : sums) {
    const double n = static_cast<double>(s.n);
    table.rows.emplace_hint(table.rows.end(), key,
                            AggregateCell{s.count, s.duration / n, s.gbps / n, s.n});
  }
  return table;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kCount: return "count";
    case Metric::kDurationMin: return "duration_min";
    case Metric::kMaxGbps: return "max_gbps";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (auto m : {Metric::kCount, Metric::kDurationMin, Metric::kMaxGbps}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

double metric_value(const AggregateCell& cell, Metric m) {
  switch (m) {
    case Metric::kCount: return cell.count_sum;
    case Metric::kDurationMin: return cell.duration_mean;
    case Metric::kMaxGbps: return cell.gbps_mean;
  }
  return 0.0;
}

TimeSeries series_for(const AggregateTable& table, Subclass subclass, Metric metric,
                      GapPolicy gaps) {
  TimeSeries series;
  series.subclass = subclass;
  series.metric = metric;
  series.granularity = table.granularity;

  std::map<PeriodKey, double> present;
  for (const auto& [key, cell] : table.rows) {
    if (key.second == subclass) present.emplace(key.first, metric_value(cell, metric));
  }
  if (present.empty()) {
    throw Error(ErrorCode::kSubclassAbsent,
                std::string(canonical_name(subclass)) + " does not occur in the table");
  }

  if (gaps == GapPolicy::kSkip) {
    for (const auto& [period, value] : present) {
      series.periods.push_back(period);
      series.values.push_back(value);
    }
    return series;
  }

  const PeriodKey last = table.last_period();
  for (PeriodKey p = table.first_period(); p <= last; p = p.next()) {
    auto it = present.find(p);
    series.periods.push_back(p);
    series.values.push_back(it == present.end() ? 0.0 : it->second);
  }
  return series;
}

std::string to_csv(const AggregateTable& table) {
  CsvWriter csv({"granularity", "period", "subclass", "count_sum", "duration_mean_min",
                 "gbps_mean"});
  for (const auto& [key, cell] : table.rows) {
    csv.row({std::string(to_string(table.granularity)), key.first.label(),
             std::string(canonical_name(key.second)), format_number(cell.count_sum),
             format_number(cell.duration_mean), format_number(cell.gbps_mean)});
  }
  return csv.str();
}

}  // namespace ddosfc
