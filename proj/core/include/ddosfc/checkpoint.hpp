#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ddosfc/lstm.hpp"
#include "ddosfc/rmsprop.hpp"
#include "ddosfc/trainer.hpp"

namespace ddosfc {

inline constexpr int kCheckpointVersion = 1;
inline constexpr std::string_view kCheckpointFormat = "ddosfc-lstm-checkpoint";

struct Checkpoint {
  LstmParams params;
  RmsPropState optimizer;
  TrainConfig config;
  /// Free-form provenance (series identity, normalization) for tools.
  std::map<std::string, std::string> tags;
};

/// JSON document: a header {format, version, hidden, window, rho, epsilon},
/// the remaining training configuration, the tags, then the parameter and
/// optimizer arrays keyed by block name. Doubles are written in shortest
/// round-trip form, so loading restores every bit. Throws InvalidArgument if
/// any parameter is non-finite.
std::string save_checkpoint(const Checkpoint& checkpoint);

/// Throws VersionMismatch for another format version and CorruptCheckpoint
/// for anything unreadable, truncated or inconsistent with the declared
/// hidden size.
Checkpoint load_checkpoint(std::string_view bytes);

}  // namespace ddosfc
