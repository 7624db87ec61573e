#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddosfc/preprocess.hpp"

namespace ddosfc {

inline constexpr double kSecondsPerYear = 31'536'000.0;  // 365 days

struct GlobalStats {
  std::uint64_t record_count = 0;
  std::int64_t total_duration_s = 0;
  double total_duration_years = 0.0;
  double max_throughput_gbps = 0.0;
  std::int64_t longest_attack_s = 0;
  civil::Date date_min;  // earliest start date
  civil::Date date_max;  // latest start date
};

/// Single pass over the records. Throws EmptyDataset on empty input.
GlobalStats global_stats(std::span<const EnrichedRecord> records);

enum class HistogramMetric { kDurationMin, kThroughputGbps };

std::string_view to_string(HistogramMetric m);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the open last bin
  std::string label;

  bool contains(double v) const { return v >= lo && v < hi; }
};

struct HistogramRow {
  std::optional<int> year;  // nullopt: all years together
  std::vector<std::uint64_t> counts;
};

struct Histogram {
  HistogramMetric metric = HistogramMetric::kDurationMin;
  std::vector<HistogramBin> bins;
  std::vector<HistogramRow> rows;

  std::uint64_t total() const;
};

/// Half-open bins in minutes: [0,15) [15,30) [30,60) [60,1440) [1440,inf).
const std::vector<HistogramBin>& duration_bins();
/// Half-open bins in Gbps: [0,10) [10,100) [100,1000) [1000,inf).
const std::vector<HistogramBin>& throughput_bins();

std::size_t bin_index(const std::vector<HistogramBin>& bins, double value);

/// One row for the whole set, or one row per start year (ascending) when
/// per_year is set. Throws EmptyDataset.
Histogram histogram_duration(std::span<const EnrichedRecord> records, bool per_year);
Histogram histogram_throughput(std::span<const EnrichedRecord> records, bool per_year);

/// 100 * (b - a) / a, or nullopt when a is not positive.
std::optional<double> growth_pct(double value_a, double value_b);

enum class GrowthDimension { kDurationBin, kThroughputBin, kSubclassCount };

std::string_view to_string(GrowthDimension d);

struct GrowthCell {
  std::string cell;
  double value_a = 0.0;
  double value_b = 0.0;
  std::optional<double> growth_pct;
};

struct GrowthReport {
  GrowthDimension dimension = GrowthDimension::kSubclassCount;
  int year_a = 0;
  int year_b = 0;
  std::vector<GrowthCell> cells;
};

/// Compares per-cell record counts between two start years. Throws YearAbsent
/// if either year has no records.
GrowthReport yoy_growth(std::span<const EnrichedRecord> records, int year_a, int year_b,
                        GrowthDimension dimension);

struct RankEntry {
  Subclass subclass = Subclass::kTotalTraffic;
  double value = 0.0;
};

/// All ten subclasses, descending by value, ties alphabetical by canonical
/// name. Count ranks by record count; DurationMin and MaxGbps by the mean
/// over the subclass's records. Throws EmptyDataset.
std::vector<RankEntry> rank_subclasses(std::span<const EnrichedRecord> records, Metric metric);

/// Distinct start years, ascending.
std::vector<int> years_present(std::span<const EnrichedRecord> records);

std::string stats_csv(const GlobalStats& stats);
/// metric,bin_lo,bin_hi,year,count - year is "all" for the aggregate row.
std::string histogram_csv(std::span<const Histogram> histograms);
/// dimension,cell,value_a,value_b,growth_pct - undefined growth is "n/a".
std::string growth_csv(std::span<const GrowthReport> reports);
std::string ranking_csv(std::span<const RankEntry> ranking);

}  // namespace ddosfc
