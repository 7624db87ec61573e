#include "ddosfc/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "ddosfc/csv.hpp"
#include "ddosfc/error.hpp"

namespace ddosfc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_records(std::span<const EnrichedRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyDataset, "no records");
}

std::int64_t duration_seconds(const EnrichedRecord& r) { return r.stop_time - r.start_time; }

Histogram build_histogram(std::span<const EnrichedRecord> records, bool per_year,
                          HistogramMetric metric) {
  require_records(records);
  Histogram h;
  h.metric = metric;
  h.bins = metric == HistogramMetric::kDurationMin ? duration_bins() : throughput_bins();
  auto value_of = [metric](const EnrichedRecord& r) {
    return metric == HistogramMetric::kDurationMin ? r.duration_min : r.max_gbps;
  };
  if (!per_year) {
    HistogramRow row{std::nullopt, std::vector<std::uint64_t>(h.bins.size(), 0)};
    for (const auto& r : records) ++row.counts[bin_index(h.bins, value_of(r))];
    h.rows.push_back(std::move(row));
    return h;
  }
  std::map<int, std::vector<std::uint64_t>> by_year;
  for (const auto& r : records) {
    auto& counts = by_year[r.start_year()];
    if (counts.empty()) counts.assign(h.bins.size(), 0);
    ++counts[bin_index(h.bins, value_of(r))];
  }
  for (auto& [year, counts] : by_year) h.rows.push_back({year, std::move(counts)});
  return h;
}

std::vector<HistogramBin> make_bins(std::initializer_list<double> edges, const char* unit) {
  std::vector<double> e(edges);
  std::vector<HistogramBin> bins;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    std::string label = "[" + format_number(e[i]) + "-" +
                        (std::isinf(e[i + 1]) ? std::string("inf") : format_number(e[i + 1])) +
                        ") " + unit;
    bins.push_back({e[i], e[i + 1], std::move(label)});
  }
  return bins;
}

}  // namespace

GlobalStats global_stats(std::span<const EnrichedRecord> records) {
  require_records(records);
  GlobalStats s;
  std::int64_t first_start = std::numeric_limits<std::int64_t>::max();
  std::int64_t last_start = std::numeric_limits<std::int64_t>::min();
  for (const auto& r : records) {
    const std::int64_t d = duration_seconds(r);
    ++s.record_count;
    s.total_duration_s += d;
    s.longest_attack_s = std::max(s.longest_attack_s, d);
    s.max_throughput_gbps = std::max(s.max_throughput_gbps, r.max_gbps);
    first_start = std::min(first_start, r.start_time);
    last_start = std::max(last_start, r.start_time);
  }
  s.total_duration_years = static_cast<double>(s.total_duration_s) / kSecondsPerYear;
  s.date_min = civil::civil_from_days(civil::day_of(first_start));
  s.date_max = civil::civil_from_days(civil::day_of(last_start));
  return s;
}

std::string_view to_string(HistogramMetric m) {
  return m == HistogramMetric::kDurationMin ? "duration_min" : "max_gbps";
}

std::uint64_t Histogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : rows) {
    for (auto c : row.counts) sum += c;
  }
  return sum;
}

const std::vector<HistogramBin>& duration_bins() {
  static const std::vector<HistogramBin> bins = make_bins({0, 15, 30, 60, 1440, kInf}, "min");
  return bins;
}

const std::vector<HistogramBin>& throughput_bins() {
  static const std::vector<HistogramBin> bins = make_bins({0, 10, 100, 1000, kInf}, "Gbps");
  return bins;
}

std::size_t bin_index(const std::vector<HistogramBin>& bins, double value) {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i].contains(value)) return i;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "value " + format_number(value) + " lies outside every histogram bin");
}

Histogram histogram_duration(std::span<const EnrichedRecord> records, bool per_year) {
  return build_histogram(records, per_year, HistogramMetric::kDurationMin);
}

Histogram histogram_throughput(std::span<const EnrichedRecord> records, bool per_year) {
  return build_histogram(records, per_year, HistogramMetric::kThroughputGbps);
}

std::optional<double> growth_pct(double value_a, double value_b) {
  if (!(value_a > 0.0)) return std::nullopt;
  return 100.0 * (value_b - value_a) / value_a;
}

std::string_view to_string(GrowthDimension d) {
  switch (d) {
    case GrowthDimension::kDurationBin: return "duration_bin";
    case GrowthDimension::kThroughputBin: return "throughput_bin";
    case GrowthDimension::kSubclassCount: return "subclass_count";
  }
  return "?";
}

GrowthReport yoy_growth(std::span<const EnrichedRecord> records, int year_a, int year_b,
                        GrowthDimension dimension) {
  std::vector<std::string> labels;
  std::function<std::size_t(const EnrichedRecord&)> cell_of;
  switch (dimension) {
    case GrowthDimension::kDurationBin:
      for (const auto& b : duration_bins()) labels.push_back(b.label);
      cell_of = [](const EnrichedRecord& r) { return bin_index(duration_bins(), r.duration_min); };
      break;
    case GrowthDimension::kThroughputBin:
      for (const auto& b : throughput_bins()) labels.push_back(b.label);
      cell_of = [](const EnrichedRecord& r) { return bin_index(throughput_bins(), r.max_gbps); };
      break;
    case GrowthDimension::kSubclassCount:
      for (Subclass s : kAllSubclasses) labels.emplace_back(canonical_name(s));
      cell_of = [](const EnrichedRecord& r) { return index_of(r.subclass); };
      break;
  }

  std::vector<double> a(labels.size(), 0.0);
  std::vector<double> b(labels.size(), 0.0);
  bool seen_a = false;
  bool seen_b = false;
  for (const auto& r : records) {
    const int year = r.start_year();
    if (year == year_a) {
      a[cell_of(r)] += r.count;
      seen_a = true;
    }
    if (year == year_b) {
      b[cell_of(r)] += r.count;
      seen_b = true;
    }
  }
  if (!seen_a) throw Error(ErrorCode::kYearAbsent, "no records in " + std::to_string(year_a));
  if (!seen_b) throw Error(ErrorCode::kYearAbsent, "no records in " + std::to_string(year_b));

  GrowthReport report;
  report.dimension = dimension;
  report.year_a = year_a;
  report.year_b = year_b;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    report.cells.push_back({labels[i], a[i], b[i], growth_pct(a[i], b[i])});
  }
  return report;
}

std::vector<RankEntry> rank_subclasses(std::span<const EnrichedRecord> records, Metric metric) {
  require_records(records);
  std::array<double, kSubclassCount> sum{};
  std::array<std::uint64_t, kSubclassCount> n{};
  for (const auto& r : records) {
    const std::size_t i = index_of(r.subclass);
    ++n[i];
    switch (metric) {
      case Metric::kCount: sum[i] += r.count; break;
      case Metric::kDurationMin: sum[i] += r.duration_min; break;
      case Metric::kMaxGbps: sum[i] += r.max_gbps; break;
    }
  }
  std::vector<RankEntry> ranking;
  for (Subclass s : kAllSubclasses) {
    const std::size_t i = index_of(s);
    double value = 0.0;
    if (n[i] > 0) value = metric == Metric::kCount ? sum[i] : sum[i] / static_cast<double>(n[i]);
    ranking.push_back({s, value});
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankEntry& x, const RankEntry& y) {
    if (x.value != y.value) return x.value > y.value;
    return canonical_name(x.subclass) < canonical_name(y.subclass);
  });
  return ranking;
}

std::vector<int> years_present(std::span<const EnrichedRecord> records) {
  std::set<int> years;
  for (const auto& r : records) years.insert(r.start_year());
  return {years.begin(), years.end()};
}

std::string stats_csv(const GlobalStats& s) {
  CsvWriter csv({"record_count", "total_duration_s", "total_duration_years",
                 "max_throughput_gbps", "longest_attack_s", "date_min", "date_max"});
  csv.row({std::to_string(s.record_count), std::to_string(s.total_duration_s),
           format_number(s.total_duration_years), format_number(s.max_throughput_gbps),
           std::to_string(s.longest_attack_s), civil::format_date(s.date_min),
           civil::format_date(s.date_max)});
  return csv.str();
}

std::string histogram_csv(std::span<const Histogram> histograms) {
  CsvWriter csv({"metric", "bin_lo", "bin_hi", "year", "count"});
  for (const auto& h : histograms) {
    for (const auto& row : h.rows) {
      for (std::size_t i = 0; i < h.bins.size(); ++i) {
        csv.row({std::string(to_string(h.metric)), format_number(h.bins[i].lo),
                 format_number(h.bins[i].hi), row.year ? std::to_string(*row.year) : "all",
                 std::to_string(row.counts[i])});
      }
    }
  }
  return csv.str();
}

std::string growth_csv(std::span<const GrowthReport> reports) {
  CsvWriter csv({"dimension", "cell", "value_a", "value_b", "growth_pct"});
  for (const auto& report : reports) {
    for (const auto& c : report.cells) {
      csv.row({std::string(to_string(report.dimension)), c.cell, format_number(c.value_a),
               format_number(c.value_b), c.growth_pct ? format_number(*c.growth_pct) : "n/a"});
    }
  }
  return csv.str();
}

std::string ranking_csv(std::span<const RankEntry> ranking) {
  CsvWriter csv({"rank", "subclass", "value"});
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    csv.row({std::to_string(i + 1), std::string(canonical_name(ranking[i].subclass)),
             format_number(ranking[i].value)});
  }
  return csv.str();
}

}  // namespace ddosfc
