#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ddosfc::cli {

/// Written into every command's output directory. `args` is the fully
/// resolved command line (defaults and config-file values expanded), so
/// replaying it reproduces the outputs without the original config file.
struct RunManifest {
  std::string tool = "ddosfc";
  std::string version;
  std::string command;
  std::vector<std::string> args;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string started_at;
  std::string finished_at;
  int exit_code = 0;
  std::vector<std::string> outputs;
};

std::string to_json(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text);

std::string utc_now();

}  // namespace ddosfc::cli
