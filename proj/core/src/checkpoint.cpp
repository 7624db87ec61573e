#include "ddosfc/checkpoint.hpp"

#include "ddosfc/error.hpp"
#include "json.hpp"

namespace ddosfc {

namespace {

using nlohmann::ordered_json;

ordered_json named_arrays(const LstmParams& layout, std::span<const double> values) {
  ordered_json obj = ordered_json::object();
  for (const auto& block : layout.blocks()) {
    obj[block.name] = std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(block.offset),
                                          values.begin() + static_cast<std::ptrdiff_t>(block.offset + block.length));
  }
  return obj;
}

void read_arrays(const ordered_json& obj, const LstmParams& layout, std::span<double> out,
                 const char* what) {
  if (!obj.is_object()) throw Error(ErrorCode::kCorruptCheckpoint, std::string(what) + " missing");
  for (const auto& block : layout.blocks()) {
    auto it = obj.find(block.name);
    if (it == obj.end() || !it->is_array() || it->size() != block.length) {
      throw Error(ErrorCode::kCorruptCheckpoint,
                  std::string(what) + "." + block.name + " is missing or has the wrong length");
    }
    for (std::size_t k = 0; k < block.length; ++k) {
      const auto& v = (*it)[k];
      if (!v.is_number()) {
        throw Error(ErrorCode::kCorruptCheckpoint, std::string(what) + "." + block.name +
                                                       " holds a non-number");
      }
      out[block.offset + k] = v.get<double>();
    }
  }
}

}  // namespace

std::string save_checkpoint(const Checkpoint& ck) {
  if (!ck.params.all_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "refusing to save non-finite parameters");
  }
  if (ck.params.hidden() != ck.config.hidden) {
    throw Error(ErrorCode::kInvalidArgument, "parameter and configuration hidden sizes differ");
  }
  ordered_json doc;
  doc["format"] = kCheckpointFormat;
  doc["version"] = kCheckpointVersion;
  doc["hidden"] = ck.config.hidden;
  doc["window"] = ck.config.window;
  doc["rho"] = ck.config.rho;
  doc["epsilon"] = ck.config.epsilon;
  doc["learning_rate"] = ck.config.learning_rate;
  doc["epochs"] = ck.config.epochs;
  doc["batch_size"] = ck.config.batch_size;
  doc["seed"] = ck.config.seed;
  doc["clip_norm"] = ck.config.clip_norm;
  doc["tags"] = ck.tags;
  doc["params"] = named_arrays(ck.params, ck.params.values());
  if (!ck.optimizer.accum.empty()) {
    if (ck.optimizer.accum.size() != ck.params.size()) {
      throw Error(ErrorCode::kInvalidArgument, "optimizer state does not match the parameters");
    }
    doc["optimizer"] = named_arrays(ck.params, ck.optimizer.accum);
  }
  return doc.dump(1) + "\n";
}

Checkpoint load_checkpoint(std::string_view bytes) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(bytes);
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kCorruptCheckpoint, e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kCheckpointFormat) {
      throw Error(ErrorCode::kCorruptCheckpoint, "not a ddosfc checkpoint");
    }
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw Error(ErrorCode::kVersionMismatch, "checkpoint version " + std::to_string(version) +
                                                   ", this build reads version " +
                                                   std::to_string(kCheckpointVersion));
    }
    Checkpoint ck;
    ck.config.hidden = doc.at("hidden").get<std::size_t>();
    ck.config.window = doc.at("window").get<std::size_t>();
    ck.config.rho = doc.at("rho").get<double>();
    ck.config.epsilon = doc.at("epsilon").get<double>();
    ck.config.learning_rate = doc.at("learning_rate").get<double>();
    ck.config.epochs = doc.at("epochs").get<std::size_t>();
    ck.config.batch_size = doc.at("batch_size").get<std::size_t>();
    ck.config.seed = doc.at("seed").get<std::uint64_t>();
    ck.config.clip_norm = doc.at("clip_norm").get<double>();
    if (ck.config.hidden == 0 || ck.config.hidden > 4096 || ck.config.window == 0) {
      throw Error(ErrorCode::kCorruptCheckpoint, "implausible hidden or window size");
    }
    ck.tags = doc.at("tags").get<std::map<std::string, std::string>>();
    ck.params = LstmParams(ck.config.hidden);
    read_arrays(doc.at("params"), ck.params, ck.params.values(), "params");
    if (auto it = doc.find("optimizer"); it != doc.end()) {
      ck.optimizer = RmsPropState::zeros(ck.params.size());
      read_arrays(*it, ck.params, ck.optimizer.accum, "optimizer");
    }
    return ck;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kCorruptCheckpoint, e.what());
  }
}

}  // namespace ddosfc
