#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddosfc/civil_time.hpp"
#include "ddosfc/subclass.hpp"

namespace ddosfc {

/// One attack event as exported by the Digital Attack Map feed.
struct AttackRecord {
  AttackClass attack_class = AttackClass::kMisuse;
  Subclass subclass = Subclass::kTotalTraffic;
  std::uint64_t max_bps = 0;
  std::int64_t start = 0;  // Unix seconds, UTC
  std::int64_t stop = 0;
  // Geographic columns are carried through parsing only; nothing downstream
  // reads them.
  std::optional<std::vector<std::string>> dst_cc;
  std::optional<std::vector<std::string>> src_cc;
  std::optional<std::vector<std::uint16_t>> dst_ports;
  std::optional<std::vector<std::uint16_t>> src_ports;

  friend bool operator==(const AttackRecord&, const AttackRecord&) = default;
};

struct Rejection {
  std::string location;  // "entry 12" (JSON array) or "line 12" (NDJSON), 1-based
  std::string reason;
};

struct ParseReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<Rejection> rejections;

  std::size_t total() const { return accepted + rejected; }
};

enum class ParseMode { kLenient, kStrict };

enum class InputFormat { kJsonArray, kNdjson };

struct ParseResult {
  std::vector<AttackRecord> records;
  ParseReport report;
  InputFormat format = InputFormat::kJsonArray;
};

/// Parses a JSON array of records or newline-delimited JSON objects. The
/// format is auto-detected from the first non-blank character and the shape
/// of the document.
///
/// Lenient mode skips bad entries and counts them in the report. Strict mode
/// throws on the first one: SchemaViolation, or UnknownSubclass when the
/// only problem is an unrecognised subclass name. Input that is neither format
/// (including an object wrapping the record array) throws NotJson.
ParseResult parse_records(std::string_view raw, ParseMode mode = ParseMode::kLenient);

/// Drops the country and port columns in place.
void drop_geo_columns(std::vector<AttackRecord>& records);

struct SyntheticSpec {
  std::size_t record_count = 1000;
  civil::Date first_day{2019, 1, 1};
  civil::Date last_day{2020, 12, 31};  // inclusive
  /// Indexed by Subclass. Defaults follow the observed subclass mix of the
  /// full export.
  std::array<double, kSubclassCount> weights{17585, 4511, 0,     7058,  50201,
                                             10742, 7121, 62589, 30822, 1896};
  /// Peak throughput is log-uniform over decades: the decade exponent is drawn
  /// uniformly from [bps_min_exponent, bps_max_exponent), then the mantissa
  /// uniformly within the decade.
  int bps_min_exponent = 8;
  int bps_max_exponent = 13;
  /// Heavy-tailed duration: each fair coin that lands heads doubles the
  /// range, up to duration_max_doublings times; the duration is then uniform
  /// in [duration_min_s, duration_min_s + duration_base_s * 2^k].
  std::int64_t duration_min_s = 60;
  std::int64_t duration_base_s = 900;
  int duration_max_doublings = 9;
  /// Fraction of records that carry the optional geo/port columns.
  double geo_fraction = 0.5;
  std::uint64_t seed = 7;
};

/// Deterministic for a fixed spec: only integer arithmetic and raw engine bits
/// feed the fields, so output is bit-identical across platforms. Start times
/// fall inside the date range and stop times are clipped to its end.
std::vector<AttackRecord> generate_synthetic(const SyntheticSpec& spec);

/// One compact JSON object per line, fields in the export's order.
std::string to_ndjson(const std::vector<AttackRecord>& records);

/// A single JSON array.
std::string to_json_array(const std::vector<AttackRecord>& records);

}  // namespace ddosfc
