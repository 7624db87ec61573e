#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ddosfc/analytics.hpp"
#include "ddosfc/error.hpp"
#include "ddosfc/random.hpp"
#include "doctest.h"

using namespace ddosfc;

namespace {

EnrichedRecord rec(Subclass s, std::int64_t start, std::int64_t seconds, std::uint64_t bps) {
  AttackRecord r;
  r.subclass = s;
  r.start = start;
  r.stop = start + seconds;
  r.max_bps = bps;
  return enrich(r);
}

std::vector<EnrichedRecord> synthetic(std::size_t n, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.record_count = n;
  spec.seed = seed;
  return enrich_all(generate_synthetic(spec));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("growth arithmetic") {
  CHECK(std::abs(*growth_pct(277, 538) - 94.22) <= 0.005);
  CHECK(*growth_pct(100, 100) == 0.0);
  CHECK(*growth_pct(200, 100) == -50.0);
  CHECK_FALSE(growth_pct(0, 5).has_value());

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double a = 1 + rng.below(100000);
    const double b = 1 + rng.below(100000);
    const double g1 = *growth_pct(a, b);
    const double g2 = *growth_pct(b, a);
    REQUIRE(std::abs((1 + g1 / 100) * (1 + g2 / 100) - 1) <= 1e-9);
  }
}

TEST_CASE("yoy growth on planted counts") {
  std::vector<EnrichedRecord> records;
  const std::int64_t y2019 = 1546300800;
  const std::int64_t y2020 = 1577836800;
  for (int i = 0; i < 277; ++i) records.push_back(rec(Subclass::kICMP, y2019 + i, 60, 1));
  for (int i = 0; i < 538; ++i) records.push_back(rec(Subclass::kICMP, y2020 + i, 60, 1));
  records.push_back(rec(Subclass::kTCPSYN, y2020, 60, 1));

  const GrowthReport r = yoy_growth(records, 2019, 2020, GrowthDimension::kSubclassCount);
  CHECK(r.cells.size() == kSubclassCount);
  const auto& icmp = r.cells[index_of(Subclass::kICMP)];
  CHECK(icmp.cell == "ICMP");
  CHECK(icmp.value_a == 277);
  CHECK(icmp.value_b == 538);
  CHECK(std::abs(*icmp.growth_pct - 94.22) <= 0.005);
  // Appears only in the later year: undefined rather than infinite.
  CHECK_FALSE(r.cells[index_of(Subclass::kTCPSYN)].growth_pct.has_value());

  const GrowthReport d = yoy_growth(records, 2019, 2020, GrowthDimension::kDurationBin);
  CHECK(d.cells.size() == duration_bins().size());
  CHECK(d.cells[0].value_a == 277);

  CHECK(code_of([&] { yoy_growth(records, 2018, 2020, GrowthDimension::kDurationBin); }) ==
        ErrorCode::kYearAbsent);
  CHECK(code_of([&] { yoy_growth(records, 2020, 2021, GrowthDimension::kDurationBin); }) ==
        ErrorCode::kYearAbsent);

  const std::vector<GrowthReport> reports{r};
  const std::string csv = growth_csv(reports);
  CHECK(csv.rfind("dimension,cell,value_a,value_b,growth_pct\n", 0) == 0);
  CHECK(csv.find("subclass_count,TCPSYN,0,1,n/a\n") != std::string::npos);
}

TEST_CASE("histogram bin edges") {
  auto duration_bin = [](double minutes) { return bin_index(duration_bins(), minutes); };
  CHECK(duration_bin(0) == 0);
  CHECK(duration_bin(14.999) == 0);
  CHECK(duration_bin(15) == 1);
  CHECK(duration_bin(20) == 1);
  CHECK(duration_bin(30) == 2);
  CHECK(duration_bin(1440) == 4);
  CHECK(duration_bin(1e9) == 4);
  auto gbps_bin = [](double g) { return bin_index(throughput_bins(), g); };
  CHECK(gbps_bin(10) == 1);
  CHECK(gbps_bin(1460) == 3);
  CHECK(gbps_bin(999.999) == 2);
  CHECK(duration_bins()[1].label == "[15-30) min");
  CHECK(std::isinf(throughput_bins().back().hi));

  const std::vector<EnrichedRecord> records{rec(Subclass::kICMP, 0, 30 * 60, 1460000000000ULL)};
  CHECK(histogram_duration(records, false).rows[0].counts ==
        std::vector<std::uint64_t>{0, 0, 1, 0, 0});
  CHECK(histogram_throughput(records, false).rows[0].counts ==
        std::vector<std::uint64_t>{0, 0, 0, 1});
  CHECK(code_of([] { histogram_duration({}, true); }) == ErrorCode::kEmptyDataset);
}

TEST_CASE("property: histograms match per-record predicates and partition the data") {
  const auto records = synthetic(3000, 11);
  struct Case {
    Histogram h;
    std::vector<double> edges;
    double (*value)(const EnrichedRecord&);
  };
  std::vector<Case> cases{
      {histogram_duration(records, true), {0, 15, 30, 60, 1440},
       [](const EnrichedRecord& r) { return r.duration_min; }},
      {histogram_throughput(records, true), {0, 10, 100, 1000},
       [](const EnrichedRecord& r) { return r.max_gbps; }},
  };
  for (const Case& c : cases) {
    const auto years = years_present(records);
    REQUIRE(c.h.rows.size() == years.size());
    CHECK(c.h.total() == records.size());
    for (std::size_t y = 0; y < years.size(); ++y) {
      REQUIRE(c.h.rows[y].year == years[y]);
      for (std::size_t b = 0; b < c.edges.size(); ++b) {
        const double lo = c.edges[b];
        const double hi =
            b + 1 < c.edges.size() ? c.edges[b + 1] : std::numeric_limits<double>::infinity();
        std::uint64_t expected = 0;
        for (const auto& r : records) {
          if (r.start_year() == years[y] && c.value(r) >= lo && c.value(r) < hi) ++expected;
        }
        CHECK(c.h.rows[y].counts[b] == expected);
      }
    }
  }
  const Histogram all = histogram_duration(records, false);
  REQUIRE(all.rows.size() == 1);
  CHECK_FALSE(all.rows[0].year.has_value());
  CHECK(all.total() == records.size());
}

TEST_CASE("global stats") {
  const std::vector<EnrichedRecord> one{rec(Subclass::kICMP, 1577836800, 60, 1000000000)};
  const GlobalStats s = global_stats(one);
  CHECK(s.record_count == 1);
  CHECK(s.total_duration_s == 60);
  CHECK(s.longest_attack_s == 60);
  CHECK(s.max_throughput_gbps == 1.0);
  CHECK(s.date_min == civil::Date{2020, 1, 1});
  CHECK(s.date_max == civil::Date{2020, 1, 1});
  CHECK(code_of([] { global_stats({}); }) == ErrorCode::kEmptyDataset);

  // The 365-day year conversion.
  const std::vector<EnrichedRecord> long_one{rec(Subclass::kICMP, 0, 825549256, 1)};
  CHECK(std::abs(global_stats(long_one).total_duration_years - 26.18) < 0.005);

  const auto records = synthetic(100, 17);
  std::int64_t total = 0, longest = 0;
  double peak = 0;
  std::int64_t first = INT64_MAX, last = INT64_MIN;
  for (const auto& r : records) {
    total += r.stop_time - r.start_time;
    longest = std::max(longest, r.stop_time - r.start_time);
    peak = std::max(peak, r.max_gbps);
    first = std::min(first, r.start_time);
    last = std::max(last, r.start_time);
  }
  const GlobalStats g = global_stats(records);
  CHECK(g.record_count == 100);
  CHECK(g.total_duration_s == total);
  CHECK(g.longest_attack_s == longest);
  CHECK(g.longest_attack_s <= g.total_duration_s);
  CHECK(g.max_throughput_gbps == peak);
  CHECK(g.total_duration_years == static_cast<double>(total) / 31536000.0);
  CHECK(g.date_min == civil::civil_from_days(civil::day_of(first)));
  CHECK(g.date_max == civil::civil_from_days(civil::day_of(last)));
  CHECK(stats_csv(g).rfind(
            "record_count,total_duration_s,total_duration_years,max_throughput_gbps,"
            "longest_attack_s,date_min,date_max\n100,",
            0) == 0);
}

TEST_CASE("ranking") {
  const std::vector<EnrichedRecord> single{rec(Subclass::kDNSMisuse, 0, 60, 1)};
  const auto r1 = rank_subclasses(single, Metric::kCount);
  REQUIRE(r1.size() == kSubclassCount);
  CHECK(r1[0].subclass == Subclass::kDNSMisuse);
  CHECK(r1[0].value == 1.0);
  for (std::size_t i = 1; i < r1.size(); ++i) CHECK(r1[i].value == 0.0);
  // Zero-valued tail is alphabetical.
  CHECK(r1[1].subclass == Subclass::kBandwidth);
  CHECK(r1.back().subclass == Subclass::kUDPMisuse);

  // Ties break alphabetically.
  const std::vector<EnrichedRecord> tied{rec(Subclass::kUDPMisuse, 0, 60, 1),
                                         rec(Subclass::kICMP, 0, 60, 1)};
  const auto r2 = rank_subclasses(tied, Metric::kCount);
  CHECK(r2[0].subclass == Subclass::kICMP);
  CHECK(r2[1].subclass == Subclass::kUDPMisuse);

  CHECK(code_of([] { rank_subclasses({}, Metric::kCount); }) == ErrorCode::kEmptyDataset);
}

TEST_CASE("property: ranking matches a count-then-sort oracle") {
  Rng rng(31);
  std::vector<EnrichedRecord> records;
  std::map<Subclass, double> planted;
  for (Subclass s : kAllSubclasses) {
    const int n = static_cast<int>(rng.below(40));
    planted[s] = n;
    for (int i = 0; i < n; ++i) records.push_back(rec(s, 1577836800 + i, 60, 1));
  }
  std::vector<std::pair<double, std::string>> oracle;
  for (auto [s, n] : planted) oracle.emplace_back(-n, std::string(canonical_name(s)));
  std::sort(oracle.begin(), oracle.end());
  const auto ranking = rank_subclasses(records, Metric::kCount);
  REQUIRE(ranking.size() == oracle.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    CHECK(canonical_name(ranking[i].subclass) == oracle[i].second);
    CHECK(ranking[i].value == -oracle[i].first);
  }

  // Mean metrics average over a subclass's records.
  const std::vector<EnrichedRecord> means{rec(Subclass::kICMP, 0, 600, 2000000000),
                                          rec(Subclass::kICMP, 0, 1800, 4000000000),
                                          rec(Subclass::kTCPSYN, 0, 1500, 1000000000)};
  const auto by_duration = rank_subclasses(means, Metric::kDurationMin);
  CHECK(by_duration[0].subclass == Subclass::kTCPSYN);
  CHECK(by_duration[0].value == 25.0);
  CHECK(by_duration[1].value == 20.0);
  const auto by_gbps = rank_subclasses(means, Metric::kMaxGbps);
  CHECK(by_gbps[0].subclass == Subclass::kICMP);
  CHECK(by_gbps[0].value == 3.0);
}
