#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddosfc {

enum class ErrorCode {
  // ingest
  kNotJson,
  kSchemaViolation,
  kUnknownSubclass,
  kEmptyDateRange,
  kAllZeroWeights,
  // preprocess / analytics
  kSubclassAbsent,
  kEmptyDataset,
  kYearAbsent,
  // dataset
  kTooFewValues,
  kDegenerateSigma,
  kSeriesTooShort,
  // neural
  kNonFiniteState,
  kLengthMismatch,
  kEmptyInput,
  kCacheMismatch,
  kTrainSetEmpty,
  kDivergedNonFinite,
  kEmptySplit,
  kVersionMismatch,
  kCorruptCheckpoint,
  // evalgrid
  kSeriesTooShortForWindow,
  kEmptyGrid,
  // chart
  kEmptySeries,
  // generic
  kInvalidArgument,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ddosfc
