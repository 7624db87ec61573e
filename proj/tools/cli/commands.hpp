#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddosfc/error.hpp"

namespace ddosfc::cli {

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,          // usage errors, I/O, anything unclassified
  kExitInputRejected = 2,    // NotJson, strict-mode schema failures
  kExitEmptyData = 3,        // EmptyDataset, EmptySplit, SubclassAbsent
  kExitSeriesTooShort = 4,   // SeriesTooShortForWindow, DegenerateSigma
  kExitDiverged = 5,         // DivergedNonFinite
  kExitVersionMismatch = 6,  // checkpoint from another format version
  kExitCorruptCheckpoint = 7,
};

int exit_code_for(ErrorCode code);

struct CommonOptions {
  std::filesystem::path out_root = "out";
  std::uint64_t seed = 42;
  bool strict = false;
};

struct SeriesOptions {
  std::string subclass = "TotalTraffic";
  std::string metric = "count";
  std::string granularity = "daily";
  std::string normalization = "full";  // full | train
  std::string gaps = "zero";           // zero | skip
};

struct IngestOptions {
  std::string input;
  bool synthetic = false;
  std::size_t count = 1000;
  std::string from = "2019-01-01";
  std::string to = "2020-12-31";
  bool keep_geo = false;
};

struct AnalyzeOptions {
  std::string records;
  std::optional<int> year_a;
  std::optional<int> year_b;
  std::string rank_metric = "count";
};

struct TrainOptions {
  std::string records;
  SeriesOptions series;
  std::size_t window = 24;
  std::size_t hidden = 64;
  std::size_t epochs = 100;
  std::size_t batch = 32;
  double lr = 0.0002;
  double clip = 5.0;
};

struct GridOptions {
  std::string records;
  SeriesOptions series;
  std::vector<std::size_t> windows{8, 16, 24, 32};
  std::vector<std::size_t> hiddens{32, 64, 128};
  std::size_t epochs = 100;
  std::size_t batch = 32;
  double lr = 0.0002;
  double clip = 5.0;
  std::size_t threads = 0;
};

struct ForecastOptions {
  std::string checkpoint;
  std::string records;
  std::string split = "test";
};

/// Directory a command writes into: <out_root>/<command>-<seed>.
std::filesystem::path command_dir(const CommonOptions& common, const std::string& command);

/// Each command writes its files plus manifest.json into command_dir() and
/// returns the process exit status. Diagnostics go to `err`, progress to
/// `out`.
int cmd_ingest(const CommonOptions& common, const IngestOptions& opts, std::ostream& out,
               std::ostream& err);
int cmd_analyze(const CommonOptions& common, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_train(const CommonOptions& common, const TrainOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_grid(const CommonOptions& common, const GridOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_forecast(const CommonOptions& common, const ForecastOptions& opts, std::ostream& out,
                 std::ostream& err);

/// Re-runs the command recorded in a manifest, optionally into another
/// output root.
int cmd_replay(const std::string& manifest_path, const std::optional<std::string>& out_root,
               std::ostream& out, std::ostream& err);

/// Full command-line entry point (argv without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddosfc::cli
