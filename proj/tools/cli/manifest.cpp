#include "cli/manifest.hpp"

#include <chrono>

#include "ddosfc/civil_time.hpp"
#include "ddosfc/error.hpp"
#include "json.hpp"

namespace ddosfc::cli {

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json doc;
  doc["tool"] = m.tool;
  doc["version"] = m.version;
  doc["command"] = m.command;
  doc["args"] = m.args;
  doc["inputs"] = m.inputs;
  doc["config"] = m.config;
  doc["seed"] = m.seed;
  doc["out_dir"] = m.out_dir;
  doc["started_at"] = m.started_at;
  doc["finished_at"] = m.finished_at;
  doc["exit_code"] = m.exit_code;
  doc["outputs"] = m.outputs;
  return doc.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = doc.at("tool").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    m.args = doc.at("args").get<std::vector<std::string>>();
    m.inputs = doc.at("inputs").get<std::vector<std::string>>();
    m.config = doc.at("config").get<std::map<std::string, std::string>>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.out_dir = doc.at("out_dir").get<std::string>();
    m.started_at = doc.value("started_at", "");
    m.finished_at = doc.value("finished_at", "");
    m.exit_code = doc.value("exit_code", 0);
    m.outputs = doc.value("outputs", std::vector<std::string>{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("unreadable manifest: ") + e.what());
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  return civil::format_timestamp(secs);
}

}  // namespace ddosfc::cli
