#include "ddosfc/ingest.hpp"

#include <cmath>
#include <limits>

#include "ddosfc/error.hpp"
#include "ddosfc/random.hpp"
#include "json.hpp"

namespace ddosfc {

namespace {

using nlohmann::json;

struct EntryError {
  std::string reason;
  bool unknown_subclass = false;
};

// Accepts JSON integers and integral-valued floats.
template <typename Int>
bool read_integer(const json& v, Int& out) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) return false;
    out = static_cast<Int>(u);
    return true;
  }
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if constexpr (std::is_unsigned_v<Int>) {
      if (i < 0) return false;
    }
    out = static_cast<Int>(i);
    return true;
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d) || d != std::floor(d)) return false;
    if (d < static_cast<double>(std::numeric_limits<Int>::lowest()) ||
        d >= static_cast<double>(std::numeric_limits<Int>::max())) {
      return false;
    }
    out = static_cast<Int>(d);
    return true;
  }
  return false;
}

std::optional<EntryError> read_country_list(const json& obj, const char* key,
                                            std::optional<std::vector<std::string>>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) return EntryError{std::string(key) + " is not a list"};
  std::vector<std::string> codes;
  for (const auto& item : *it) {
    if (!item.is_string() || item.get_ref<const std::string&>().size() != 2) {
      return EntryError{std::string(key) + " holds a value that is not a 2-letter country code"};
    }
    codes.push_back(item.get<std::string>());
  }
  out = std::move(codes);
  return std::nullopt;
}

std::optional<EntryError> read_port_list(const json& obj, const char* key,
                                         std::optional<std::vector<std::uint16_t>>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) return EntryError{std::string(key) + " is not a list"};
  std::vector<std::uint16_t> ports;
  for (const auto& item : *it) {
    std::uint64_t port = 0;
    if (!read_integer(item, port) || port > 65535) {
      return EntryError{std::string(key) + " holds a value that is not a port in [0, 65535]"};
    }
    ports.push_back(static_cast<std::uint16_t>(port));
  }
  out = std::move(ports);
  return std::nullopt;
}

std::optional<EntryError> read_entry(const json& obj, AttackRecord& rec) {
  if (!obj.is_object()) return EntryError{"entry is not a JSON object"};

  auto field = [&](const char* key) -> const json* {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  };

  const json* cls = field("attack_class");
  if (cls == nullptr) return EntryError{"missing attack_class"};
  if (!cls->is_string()) return EntryError{"attack_class is not a string"};
  auto parsed_class = parse_attack_class(cls->get_ref<const std::string&>());
  if (!parsed_class) {
    return EntryError{"unknown attack_class \"" + cls->get<std::string>() + "\""};
  }
  rec.attack_class = *parsed_class;

  const json* sub = field("subclass");
  if (sub == nullptr) return EntryError{"missing subclass"};
  if (!sub->is_string()) return EntryError{"subclass is not a string"};
  auto parsed_sub = parse_subclass(sub->get_ref<const std::string&>());
  if (!parsed_sub) {
    return EntryError{"unknown subclass \"" + sub->get<std::string>() + "\"", true};
  }
  rec.subclass = *parsed_sub;

  const json* bps = field("max_bps");
  if (bps == nullptr) return EntryError{"missing max_bps"};
  if (!read_integer(*bps, rec.max_bps)) return EntryError{"max_bps is not a non-negative integer"};

  const json* start = field("start");
  if (start == nullptr) return EntryError{"missing start"};
  if (!read_integer(*start, rec.start)) return EntryError{"start is not an integer timestamp"};

  const json* stop = field("stop");
  if (stop == nullptr) return EntryError{"missing stop"};
  if (!read_integer(*stop, rec.stop)) return EntryError{"stop is not an integer timestamp"};
  if (rec.stop < rec.start) return EntryError{"stop before start"};

  if (auto e = read_country_list(obj, "dst_cc", rec.dst_cc)) return e;
  if (auto e = read_country_list(obj, "src_cc", rec.src_cc)) return e;
  if (auto e = read_port_list(obj, "dst_ports", rec.dst_ports)) return e;
  if (auto e = read_port_list(obj, "src_ports", rec.src_ports)) return e;
  return std::nullopt;
}

bool looks_like_record(const json& obj) {
  for (const char* key : {"attack_class", "subclass", "start", "stop", "max_bps"}) {
    if (obj.contains(key)) return true;
  }
  return false;
}

class Collector {
 public:
  explicit Collector(ParseMode mode) : mode_(mode) {}

  void consume(const json& entry, const std::string& location) {
    AttackRecord rec;
    if (auto err = read_entry(entry, rec)) {
      reject(location, err->reason, err->unknown_subclass);
      return;
    }
    result_.records.push_back(std::move(rec));
    ++result_.report.accepted;
  }

  void reject(const std::string& location, const std::string& reason,
              bool unknown_subclass = false) {
    if (mode_ == ParseMode::kStrict) {
      throw Error(unknown_subclass ? ErrorCode::kUnknownSubclass : ErrorCode::kSchemaViolation,
                  location + ": " + reason);
    }
    ++result_.report.rejected;
    result_.report.rejections.push_back({location, reason});
  }

  ParseResult take(InputFormat format) {
    result_.format = format;
    return std::move(result_);
  }

 private:
  ParseMode mode_;
  ParseResult result_;
};

std::size_t skip_leading_space(std::string_view raw) {
  std::size_t pos = 0;
  if (raw.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos < raw.size() && (raw[pos] == ' ' || raw[pos] == '\t' || raw[pos] == '\n' ||
                              raw[pos] == '\r')) {
    ++pos;
  }
  return pos;
}

ParseResult parse_ndjson(std::string_view raw, ParseMode mode) {
  Collector collector(mode);
  std::size_t line_no = 0;
  std::size_t parsed_lines = 0;
  std::size_t nonblank_lines = 0;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view line = raw.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == raw.size()) break;
      continue;
    }
    ++nonblank_lines;
    const std::string location = "line " + std::to_string(line_no);
    json entry = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (entry.is_discarded()) {
      collector.reject(location, "malformed JSON");
    } else {
      ++parsed_lines;
      collector.consume(entry, location);
    }
    if (end == raw.size()) break;
  }
  if (nonblank_lines > 0 && parsed_lines == 0) {
    throw Error(ErrorCode::kNotJson, "no line parses as JSON (expected an array or NDJSON)");
  }
  return collector.take(InputFormat::kNdjson);
}

}  // namespace

ParseResult parse_records(std::string_view raw, ParseMode mode) {
  const std::size_t begin = skip_leading_space(raw);
  if (begin == raw.size()) return Collector(mode).take(InputFormat::kNdjson);
  const std::string_view body = raw.substr(begin);

  if (body.front() == '[') {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kNotJson, std::string("top-level array does not parse: ") + e.what());
    }
    Collector collector(mode);
    std::size_t index = 0;
    for (const auto& entry : doc) {
      collector.consume(entry, "entry " + std::to_string(++index));
    }
    return collector.take(InputFormat::kJsonArray);
  }

  if (body.front() != '{') {
    throw Error(ErrorCode::kNotJson, "input starts with neither '[' nor '{'");
  }

  // A lone (possibly pretty-printed) object is one record; an object wrapping
  // the record array is reported rather than guessed at.
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (!doc.is_discarded()) {
    if (!looks_like_record(doc)) {
      for (const auto& [key, value] : doc.items()) {
        if (value.is_array()) {
          throw Error(ErrorCode::kNotJson, "top-level object wraps an array under key \"" + key +
                                               "\"; expected a plain array or NDJSON");
        }
      }
    }
    Collector collector(mode);
    collector.consume(doc, "line 1");
    return collector.take(InputFormat::kNdjson);
  }
  return parse_ndjson(body, mode);
}

void drop_geo_columns(std::vector<AttackRecord>& records) {
  for (auto& r : records) {
    r.dst_cc.reset();
    r.src_cc.reset();
    r.dst_ports.reset();
    r.src_ports.reset();
  }
}

std::vector<AttackRecord> generate_synthetic(const SyntheticSpec& spec) {
  const std::int64_t first = civil::days_from_civil(spec.first_day);
  const std::int64_t last = civil::days_from_civil(spec.last_day);
  if (last < first) throw Error(ErrorCode::kEmptyDateRange, "last_day precedes first_day");

  double total_weight = 0.0;
  for (double w : spec.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "subclass weights must be finite and non-negative");
    }
    total_weight += w;
  }
  if (total_weight <= 0.0) throw Error(ErrorCode::kAllZeroWeights, "no subclass has weight");
  if (spec.bps_min_exponent < 0 || spec.bps_max_exponent > 18 ||
      spec.bps_max_exponent <= spec.bps_min_exponent) {
    throw Error(ErrorCode::kInvalidArgument, "bps exponents must satisfy 0 <= min < max <= 18");
  }
  if (spec.duration_min_s < 0 || spec.duration_base_s < 0 || spec.duration_max_doublings < 0 ||
      spec.duration_max_doublings > 30) {
    throw Error(ErrorCode::kInvalidArgument, "invalid duration parameters");
  }

  std::array<double, kSubclassCount> cumulative{};
  double running = 0.0;
  for (std::size_t i = 0; i < kSubclassCount; ++i) {
    running += spec.weights[i];
    cumulative[i] = running / total_weight;
  }

  static constexpr std::array<const char*, 8> kCountries = {"US", "CN", "GB", "DE",
                                                            "FR", "BR", "RU", "JP"};
  static constexpr std::array<std::uint16_t, 6> kPorts = {53, 80, 123, 443, 1900, 11211};

  const std::int64_t range_begin = first * 86400;
  const std::int64_t range_end = (last + 1) * 86400 - 1;

  Rng rng(spec.seed);
  std::vector<AttackRecord> out;
  out.reserve(spec.record_count);
  for (std::size_t n = 0; n < spec.record_count; ++n) {
    AttackRecord rec;
    const double u = rng.uniform01();
    std::size_t pick = 0;
    while (pick + 1 < kSubclassCount && (u >= cumulative[pick] || spec.weights[pick] == 0.0)) {
      ++pick;
    }
    // Guard against trailing zero weights after rounding in the cumulative sum.
    while (spec.weights[pick] == 0.0) --pick;
    rec.subclass = kAllSubclasses[pick];
    rec.attack_class = (rec.subclass == Subclass::kTotalTraffic ||
                        rec.subclass == Subclass::kBandwidth)
                           ? AttackClass::kDetector
                           : AttackClass::kMisuse;

    const int decade = static_cast<int>(
        rng.between(spec.bps_min_exponent, spec.bps_max_exponent - 1));
    std::uint64_t lo = 1;
    for (int i = 0; i < decade; ++i) lo *= 10;
    rec.max_bps = lo + rng.below(lo * 9);

    int doublings = 0;
    while (doublings < spec.duration_max_doublings && rng.coin()) ++doublings;
    const std::int64_t span = spec.duration_base_s << doublings;
    const std::int64_t duration = spec.duration_min_s + rng.between(0, span);

    rec.start = rng.between(range_begin, range_end);
    rec.stop = std::min(rec.start + duration, range_end);

    if (rng.uniform01() < spec.geo_fraction) {
      rec.dst_cc = std::vector<std::string>{kCountries[rng.below(kCountries.size())]};
      rec.src_cc = std::vector<std::string>{kCountries[rng.below(kCountries.size())]};
      rec.dst_ports = std::vector<std::uint16_t>{kPorts[rng.below(kPorts.size())]};
      rec.src_ports = std::vector<std::uint16_t>{};
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

nlohmann::ordered_json to_json(const AttackRecord& r) {
  // ordered_json keeps the export's column order stable in the output.
  nlohmann::ordered_json obj;
  obj["attack_class"] = std::string(to_string(r.attack_class));
  if (r.dst_cc) obj["dst_cc"] = *r.dst_cc;
  if (r.dst_ports) obj["dst_ports"] = *r.dst_ports;
  obj["max_bps"] = r.max_bps;
  if (r.src_cc) obj["src_cc"] = *r.src_cc;
  if (r.src_ports) obj["src_ports"] = *r.src_ports;
  obj["start"] = r.start;
  obj["stop"] = r.stop;
  obj["subclass"] = std::string(export_name(r.subclass));
  return obj;
}

}  // namespace

std::string to_ndjson(const std::vector<AttackRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string to_json_array(const std::vector<AttackRecord>& records) {
  std::string out = "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) out += ",\n ";
    out += to_json(records[i]).dump();
  }
  out += "]\n";
  return out;
}

}  // namespace ddosfc
