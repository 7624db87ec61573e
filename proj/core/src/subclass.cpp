#include "ddosfc/subclass.hpp"

#include "ddosfc/error.hpp"

namespace ddosfc {

namespace {

struct Names {
  std::string_view canonical;
  std::string_view exported;
};

constexpr std::array<Names, kSubclassCount> kNames = {{
    {"TCPSYN", "TCPSYN"},
    {"TCPRST", "TCPRST"},
    {"TCPACK", "TCPACK"},
    {"Protocol", "Protocol"},
    {"UDPMisuse", "UDP Misuse"},
    {"ICMP", "ICMP"},
    {"Bandwidth", "Bandwidth"},
    {"TotalTraffic", "Total Traffic"},
    {"IPFragment", "IP Fragment"},
    {"DNSMisuse", "DNS Misuse"},
}};

}  // namespace

std::string_view canonical_name(Subclass s) { return kNames[index_of(s)].canonical; }

std::string_view export_name(Subclass s) { return kNames[index_of(s)].exported; }

std::optional<Subclass> parse_subclass(std::string_view text) {
  std::string squeezed;
  squeezed.reserve(text.size());
  for (char ch : text) {
    if (ch != ' ') squeezed.push_back(ch);
  }
  for (Subclass s : kAllSubclasses) {
    if (canonical_name(s) == squeezed) return s;
  }
  return std::nullopt;
}

std::string_view to_string(AttackClass c) {
  return c == AttackClass::kMisuse ? "Misuse" : "Detector";
}

std::optional<AttackClass> parse_attack_class(std::string_view text) {
  if (text == "Misuse") return AttackClass::kMisuse;
  if (text == "Detector") return AttackClass::kDetector;
  return std::nullopt;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotJson: return "NotJson";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kUnknownSubclass: return "UnknownSubclass";
    case ErrorCode::kEmptyDateRange: return "EmptyDateRange";
    case ErrorCode::kAllZeroWeights: return "AllZeroWeights";
    case ErrorCode::kSubclassAbsent: return "SubclassAbsent";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kYearAbsent: return "YearAbsent";
    case ErrorCode::kTooFewValues: return "TooFewValues";
    case ErrorCode::kDegenerateSigma: return "DegenerateSigma";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kCacheMismatch: return "CacheMismatch";
    case ErrorCode::kTrainSetEmpty: return "TrainSetEmpty";
    case ErrorCode::kDivergedNonFinite: return "DivergedNonFinite";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::kSeriesTooShortForWindow: return "SeriesTooShortForWindow";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace ddosfc
