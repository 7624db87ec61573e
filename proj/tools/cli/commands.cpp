#include "cli/commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cli/chart.hpp"
#include "cli/manifest.hpp"
#include "ddosfc/analytics.hpp"
#include "ddosfc/checkpoint.hpp"
#include "ddosfc/csv.hpp"
#include "ddosfc/dataset.hpp"
#include "ddosfc/evalgrid.hpp"
#include "ddosfc/ingest.hpp"
#include "ddosfc/metrics.hpp"
#include "ddosfc/preprocess.hpp"
#include "ddosfc/random.hpp"
#include "ddosfc/trainer.hpp"
#include "json.hpp"

#ifndef DDOSFC_VERSION
#define DDOSFC_VERSION "0.0.0"
#endif

namespace ddosfc::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotJson:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kUnknownSubclass:
      return kExitInputRejected;
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kEmptySplit:
    case ErrorCode::kSubclassAbsent:
    case ErrorCode::kTrainSetEmpty:
      return kExitEmptyData;
    case ErrorCode::kSeriesTooShortForWindow:
    case ErrorCode::kSeriesTooShort:
    case ErrorCode::kDegenerateSigma:
      return kExitSeriesTooShort;
    case ErrorCode::kDivergedNonFinite:
    case ErrorCode::kNonFiniteState:
      return kExitDiverged;
    case ErrorCode::kVersionMismatch:
      return kExitVersionMismatch;
    case ErrorCode::kCorruptCheckpoint:
      return kExitCorruptCheckpoint;
    default:
      return kExitFailure;
  }
}

fs::path command_dir(const CommonOptions& common, const std::string& command) {
  return common.out_root / (command + "-" + std::to_string(common.seed));
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string absolute_path(const std::string& p) {
  return p.empty() ? p : fs::absolute(p).lexically_normal().string();
}

class RunContext {
 public:
  RunContext(const CommonOptions& common, std::string command)
      : dir_(command_dir(common, command)) {
    manifest_.version = DDOSFC_VERSION;
    manifest_.command = std::move(command);
    manifest_.seed = common.seed;
    manifest_.out_dir = absolute_path(dir_.string());
    manifest_.started_at = utc_now();
    manifest_.args = {"--out", absolute_path(common.out_root.string()), "--seed",
                      std::to_string(common.seed)};
    if (common.strict) manifest_.args.emplace_back("--strict");
    manifest_.args.push_back(manifest_.command);
  }

  const fs::path& dir() const { return dir_; }
  RunManifest& manifest() { return manifest_; }

  void arg(const std::string& flag, const std::string& value) {
    manifest_.args.push_back(flag);
    manifest_.args.push_back(value);
    manifest_.config[flag.substr(2)] = value;
  }
  void positional(const std::string& value) { manifest_.args.push_back(value); }
  void input(const std::string& path) { manifest_.inputs.push_back(path); }

  void write(const std::string& name, const std::string& content) {
    ensure_dir();
    write_file(dir_ / name, content);
    manifest_.outputs.push_back(name);
  }

  void finish(int exit_code) {
    manifest_.exit_code = exit_code;
    manifest_.finished_at = utc_now();
    try {
      ensure_dir();
      write_file(dir_ / "manifest.json", to_json(manifest_));
    } catch (const Error&) {
      // Nothing else to report to; the caller already has the exit status.
    }
  }

 private:
  void ensure_dir() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir_.string() + ": " + ec.message());
  }

  fs::path dir_;
  RunManifest manifest_;
};

int guarded(RunContext& ctx, std::ostream& err, const std::function<void()>& body) {
  int code = kExitOk;
  try {
    body();
  } catch (const Error& e) {
    err << "ddosfc " << ctx.manifest().command << ": " << e.what() << "\n";
    code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "ddosfc " << ctx.manifest().command << ": " << e.what() << "\n";
    code = kExitFailure;
  }
  ctx.finish(code);
  return code;
}

std::vector<EnrichedRecord> load_enriched(const std::string& path, bool strict, std::ostream& err) {
  ParseResult parsed =
      parse_records(read_file(path), strict ? ParseMode::kStrict : ParseMode::kLenient);
  if (parsed.report.rejected > 0) {
    err << "warning: " << parsed.report.rejected << " of " << parsed.report.total()
        << " entries in " << path << " were rejected\n";
  }
  return enrich_all(parsed.records);
}

template <typename T>
T require_parsed(std::optional<T> value, const std::string& what, const std::string& text) {
  if (!value) throw Error(ErrorCode::kInvalidArgument, "unknown " + what + " \"" + text + "\"");
  return *value;
}

struct SeriesChoice {
  Subclass subclass;
  Metric metric;
  Granularity granularity;
  NormalizationSource normalization;
  GapPolicy gaps;
};

SeriesChoice resolve(const SeriesOptions& o) {
  SeriesChoice c{};
  c.subclass = require_parsed(parse_subclass(o.subclass), "subclass", o.subclass);
  c.metric = require_parsed(parse_metric(o.metric), "metric", o.metric);
  c.granularity = require_parsed(parse_granularity(o.granularity), "granularity", o.granularity);
  c.normalization =
      require_parsed(parse_normalization_source(o.normalization), "normalization", o.normalization);
  if (o.gaps == "zero") {
    c.gaps = GapPolicy::kZeroFill;
  } else if (o.gaps == "skip") {
    c.gaps = GapPolicy::kSkip;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown gap policy \"" + o.gaps + "\"");
  }
  return c;
}

void record_series_args(RunContext& ctx, const SeriesOptions& o) {
  ctx.arg("--subclass", o.subclass);
  ctx.arg("--metric", o.metric);
  ctx.arg("--granularity", o.granularity);
  ctx.arg("--norm", o.normalization);
  ctx.arg("--gaps", o.gaps);
}

TimeSeries build_series(const std::vector<EnrichedRecord>& records, const SeriesChoice& c) {
  if (records.empty()) throw Error(ErrorCode::kEmptyDataset, "no records");
  return series_for(aggregate(records, c.granularity), c.subclass, c.metric, c.gaps);
}

std::string series_csv(const TimeSeries& s) {
  CsvWriter csv({"period", "value"});
  for (std::size_t i = 0; i < s.size(); ++i) {
    csv.row({s.periods[i].label(), format_number(s.values[i])});
  }
  return csv.str();
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string report_json(const ParseResult& parsed) {
  nlohmann::ordered_json doc;
  doc["format"] = parsed.format == InputFormat::kJsonArray ? "array" : "ndjson";
  doc["accepted"] = parsed.report.accepted;
  doc["rejected"] = parsed.report.rejected;
  auto& list = doc["rejections"] = nlohmann::ordered_json::array();
  for (const auto& r : parsed.report.rejections) {
    list.push_back({{"location", r.location}, {"reason", r.reason}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace

int cmd_ingest(const CommonOptions& common, const IngestOptions& opts, std::ostream& out,
               std::ostream& err) {
  RunContext ctx(common, "ingest");
  if (opts.synthetic) {
    ctx.arg("--synthetic-count", std::to_string(opts.count));
    ctx.arg("--from", opts.from);
    ctx.arg("--to", opts.to);
    ctx.manifest().args.emplace_back("--synthetic");
  } else {
    ctx.positional(absolute_path(opts.input));
    ctx.input(absolute_path(opts.input));
  }
  if (opts.keep_geo) ctx.manifest().args.emplace_back("--keep-geo");

  return guarded(ctx, err, [&] {
    ParseResult parsed;
    if (opts.synthetic) {
      SyntheticSpec spec;
      spec.record_count = opts.count;
      spec.seed = common.seed;
      if (!civil::parse_date(opts.from, spec.first_day) ||
          !civil::parse_date(opts.to, spec.last_day)) {
        throw Error(ErrorCode::kInvalidArgument, "--from/--to must be YYYY-MM-DD dates");
      }
      parsed.records = generate_synthetic(spec);
      parsed.report.accepted = parsed.records.size();
      parsed.format = InputFormat::kNdjson;
    } else {
      if (opts.input.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "give an input file or --synthetic");
      }
      parsed = parse_records(read_file(opts.input),
                             common.strict ? ParseMode::kStrict : ParseMode::kLenient);
    }
    if (!opts.keep_geo) drop_geo_columns(parsed.records);
    ctx.write("records.ndjson", to_ndjson(parsed.records));
    ctx.write("parse_report.json", report_json(parsed));
    out << "ingest: accepted=" << parsed.report.accepted << " rejected=" << parsed.report.rejected
        << " -> " << ctx.dir().string() << "\n";
  });
}

int cmd_analyze(const CommonOptions& common, const AnalyzeOptions& opts, std::ostream& out,
                std::ostream& err) {
  RunContext ctx(common, "analyze");
  ctx.positional(absolute_path(opts.records));
  ctx.input(absolute_path(opts.records));
  ctx.arg("--rank-metric", opts.rank_metric);
  if (opts.year_a) ctx.arg("--year-a", std::to_string(*opts.year_a));
  if (opts.year_b) ctx.arg("--year-b", std::to_string(*opts.year_b));

  return guarded(ctx, err, [&] {
    const Metric rank_metric = require_parsed(parse_metric(opts.rank_metric), "metric",
                                              opts.rank_metric);
    const auto records = load_enriched(opts.records, common.strict, err);
    if (records.empty()) throw Error(ErrorCode::kEmptyDataset, opts.records + " holds no records");

    const GlobalStats stats = global_stats(records);
    const std::vector<Histogram> histograms = {
        histogram_duration(records, false), histogram_duration(records, true),
        histogram_throughput(records, false), histogram_throughput(records, true)};
    const auto ranking = rank_subclasses(records, rank_metric);

    std::vector<GrowthReport> growth;
    const std::vector<int> years = years_present(records);
    std::optional<int> year_a = opts.year_a;
    std::optional<int> year_b = opts.year_b;
    if (!year_a && !year_b && years.size() >= 2) {
      year_a = years[years.size() - 2];
      year_b = years.back();
    }
    if (year_a && year_b) {
      for (auto dim : {GrowthDimension::kDurationBin, GrowthDimension::kThroughputBin,
                       GrowthDimension::kSubclassCount}) {
        growth.push_back(yoy_growth(records, *year_a, *year_b, dim));
      }
    } else if (year_a || year_b) {
      throw Error(ErrorCode::kInvalidArgument, "give both --year-a and --year-b");
    } else {
      err << "note: records cover a single year; growth.csv has no rows\n";
    }

    ctx.write("stats.csv", stats_csv(stats));
    ctx.write("histogram.csv", histogram_csv(histograms));
    ctx.write("growth.csv", growth_csv(growth));
    ctx.write("ranking.csv", ranking_csv(ranking));
    for (auto g : {Granularity::kDaily, Granularity::kWeekly, Granularity::kMonthly,
                   Granularity::kYearly}) {
      ctx.write("aggregate_" + std::string(to_string(g)) + ".csv", to_csv(aggregate(records, g)));
    }
    out << "analyze: " << stats.record_count << " records, " << stats.total_duration_s
        << " s total duration (" << format_fixed(stats.total_duration_years, 2)
        << " years), peak " << format_number(stats.max_throughput_gbps) << " Gbps, top subclass "
        << canonical_name(ranking.front().subclass) << " -> " << ctx.dir().string() << "\n";
  });
}

int cmd_train(const CommonOptions& common, const TrainOptions& opts, std::ostream& out,
              std::ostream& err) {
  RunContext ctx(common, "train");
  ctx.positional(absolute_path(opts.records));
  ctx.input(absolute_path(opts.records));
  record_series_args(ctx, opts.series);
  ctx.arg("--window", std::to_string(opts.window));
  ctx.arg("--hidden", std::to_string(opts.hidden));
  ctx.arg("--epochs", std::to_string(opts.epochs));
  ctx.arg("--batch", std::to_string(opts.batch));
  ctx.arg("--lr", format_number(opts.lr));
  ctx.arg("--clip", format_number(opts.clip));

  return guarded(ctx, err, [&] {
    const SeriesChoice choice = resolve(opts.series);
    TrainConfig config;
    config.window = opts.window;
    config.hidden = opts.hidden;
    config.epochs = opts.epochs;
    config.batch_size = opts.batch;
    config.learning_rate = opts.lr;
    config.clip_norm = opts.clip;
    config.seed = common.seed;
    config.validate();

    const auto records = load_enriched(opts.records, common.strict, err);
    const TimeSeries series = build_series(records, choice);
    require_window_fits(series.size(), config.window);
    const WindowedDataset ds =
        build_windowed_dataset(series.values, config.window, choice.normalization);

    out << "train: " << canonical_name(choice.subclass) << " " << to_string(choice.metric)
        << ", " << series.size() << " periods, " << ds.train.size() << " training samples, W="
        << config.window << " H=" << config.hidden << "\n";
    TrainResult trained;
    try {
      trained = train(init_model(config.hidden, mix64(common.seed)), ds, config);
    } catch (const TrainDiverged& e) {
      ctx.write("history.csv", to_csv(e.partial_history()));
      throw;
    }

    Checkpoint ck;
    ck.params = trained.params;
    ck.optimizer = trained.optimizer;
    ck.config = config;
    ck.tags = {{"subclass", std::string(canonical_name(choice.subclass))},
               {"metric", std::string(to_string(choice.metric))},
               {"granularity", std::string(to_string(choice.granularity))},
               {"normalization", std::string(to_string(choice.normalization))},
               {"gaps", opts.series.gaps},
               {"sigma", format_number(ds.normalization.sigma)}};
    ctx.write("checkpoint.json", save_checkpoint(ck));
    ctx.write("history.csv", to_csv(trained.history));
    ctx.write("series.csv", series_csv(series));
    const auto& last = trained.history.epochs.back();
    out << "train: final train_mse=" << format_number(last.train_mse);
    if (last.validation_mse) out << " validation_mse=" << format_number(*last.validation_mse);
    out << " -> " << ctx.dir().string() << "\n";
  });
}

int cmd_grid(const CommonOptions& common, const GridOptions& opts, std::ostream& out,
             std::ostream& err) {
  RunContext ctx(common, "grid");
  ctx.positional(absolute_path(opts.records));
  ctx.input(absolute_path(opts.records));
  record_series_args(ctx, opts.series);
  ctx.arg("--windows", join(opts.windows));
  ctx.arg("--hiddens", join(opts.hiddens));
  ctx.arg("--epochs", std::to_string(opts.epochs));
  ctx.arg("--batch", std::to_string(opts.batch));
  ctx.arg("--lr", format_number(opts.lr));
  ctx.arg("--clip", format_number(opts.clip));
  ctx.arg("--threads", std::to_string(opts.threads));

  return guarded(ctx, err, [&] {
    const SeriesChoice choice = resolve(opts.series);
    GridSpec spec;
    spec.window_sizes = opts.windows;
    spec.hidden_sizes = opts.hiddens;
    spec.base.epochs = opts.epochs;
    spec.base.batch_size = opts.batch;
    spec.base.learning_rate = opts.lr;
    spec.base.clip_norm = opts.clip;
    spec.master_seed = common.seed;
    spec.normalization = choice.normalization;
    spec.threads = opts.threads;

    const auto records = load_enriched(opts.records, common.strict, err);
    const TimeSeries series = build_series(records, choice);
    const GridResult result = run_grid(series, spec);
    const auto [best_w, best_h] = best_config(result);

    ctx.write("grid.csv", grid_csv(result));
    ctx.write("grid_table.txt", render_grid_table(result));
    ctx.write("grid_table.csv", render_grid_table_csv(result));
    out << render_grid_table(result);
    out << "recommended: window=" << best_w << " hidden=" << best_h << "\n";
  });
}

int cmd_forecast(const CommonOptions& common, const ForecastOptions& opts, std::ostream& out,
                 std::ostream& err) {
  RunContext ctx(common, "forecast");
  ctx.positional(absolute_path(opts.records));
  ctx.input(absolute_path(opts.records));
  ctx.input(absolute_path(opts.checkpoint));
  ctx.arg("--checkpoint", absolute_path(opts.checkpoint));
  ctx.arg("--split", opts.split);

  return guarded(ctx, err, [&] {
    const SplitName split = require_parsed(parse_split_name(opts.split), "split", opts.split);
    const Checkpoint ck = load_checkpoint(read_file(opts.checkpoint));
    auto tag = [&](const std::string& key, const std::string& fallback) {
      auto it = ck.tags.find(key);
      return it == ck.tags.end() ? fallback : it->second;
    };
    SeriesOptions so;
    so.subclass = tag("subclass", so.subclass);
    so.metric = tag("metric", so.metric);
    so.granularity = tag("granularity", so.granularity);
    so.normalization = tag("normalization", so.normalization);
    so.gaps = tag("gaps", so.gaps);
    const SeriesChoice choice = resolve(so);

    const auto records = load_enriched(opts.records, common.strict, err);
    const TimeSeries series = build_series(records, choice);
    const WindowedDataset ds =
        build_windowed_dataset(series.values, ck.config.window, choice.normalization);
    if (ck.tags.count("sigma") != 0 && tag("sigma", "") != format_number(ds.normalization.sigma)) {
      err << "note: series sigma " << format_number(ds.normalization.sigma)
          << " differs from the training run's " << tag("sigma", "") << "\n";
    }
    const SeriesPrediction pred = predict_series_denormalized(ck.params, ds, split);

    CsvWriter csv({"period", "actual", "predicted"});
    std::vector<std::string> ticks;
    for (std::size_t i = 0; i < pred.targets.size(); ++i) {
      const std::string period = series.periods[ds.target_index(split, i)].label();
      ticks.push_back(period);
      csv.row({period, format_number(pred.targets[i]), format_number(pred.predictions[i])});
    }
    const std::vector<ChartSeries> lines = {{"actual", pred.targets},
                                            {"predicted", pred.predictions}};
    ChartOptions chart;
    chart.x_ticks = ticks;
    chart.y_label = so.metric;
    const std::string title = "Predicted vs actual " + so.metric + " of " + so.subclass + " (" +
                              opts.split + " split)";
    const std::string svg = render_line_chart(lines, title, chart);

    ctx.write("forecast.csv", csv.str());
    ctx.write("forecast.svg", svg);
    out << "forecast: " << pred.targets.size() << " " << opts.split
        << " points, MSE(denormalized)=" << format_number(mse(pred.targets, pred.predictions))
        << " -> " << ctx.dir().string() << "\n";
  });
}

int cmd_replay(const std::string& manifest_path, const std::optional<std::string>& out_root,
               std::ostream& out, std::ostream& err) {
  RunManifest m;
  try {
    m = parse_manifest(read_file(manifest_path));
  } catch (const Error& e) {
    err << "ddosfc replay: " << e.what() << "\n";
    return kExitFailure;
  }
  std::vector<std::string> args = m.args;
  if (out_root) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--out") args[i + 1] = *out_root;
    }
  }
  return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DDoS attack record analytics and LSTM forecasting"};
  app.set_version_flag("--version", DDOSFC_VERSION);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "key=value file mirroring the flags (flags win)");

  CommonOptions common;
  std::string out_root = common.out_root.string();
  app.add_option("--out", out_root, "Output root; files land in <out>/<command>-<seed>/")
      ->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for every random draw")->capture_default_str();
  app.add_flag("--strict", common.strict, "Abort on the first malformed record");

  auto add_series = [](CLI::App* sub, SeriesOptions& s) {
    sub->add_option("--subclass", s.subclass, "Attack subclass")->capture_default_str();
    sub->add_option("--metric", s.metric, "count | duration_min | max_gbps")->capture_default_str();
    sub->add_option("--granularity", s.granularity, "daily | weekly | monthly | yearly")
        ->capture_default_str();
    sub->add_option("--norm", s.normalization, "Normalization source: full | train")
        ->capture_default_str();
    sub->add_option("--gaps", s.gaps, "Attack-free periods: zero | skip")->capture_default_str();
  };

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse an attack-record export into NDJSON");
  ingest_cmd->add_option("input", ingest.input, "attacks JSON array or NDJSON file");
  ingest_cmd->add_flag("--synthetic", ingest.synthetic, "Generate records instead of reading");
  ingest_cmd->add_option("--synthetic-count,-n", ingest.count, "Synthetic record count")
      ->capture_default_str();
  ingest_cmd->add_option("--from", ingest.from, "Synthetic first day (YYYY-MM-DD)")
      ->capture_default_str();
  ingest_cmd->add_option("--to", ingest.to, "Synthetic last day, inclusive")->capture_default_str();
  ingest_cmd->add_flag("--keep-geo", ingest.keep_geo, "Keep country and port columns");

  AnalyzeOptions analyze;
  std::optional<int> year_a;
  std::optional<int> year_b;
  auto* analyze_cmd = app.add_subcommand("analyze", "Statistics, histograms, growth, ranking");
  analyze_cmd->add_option("records", analyze.records, "Records file")->required();
  analyze_cmd->add_option("--year-a", year_a, "Baseline year for growth");
  analyze_cmd->add_option("--year-b", year_b, "Comparison year for growth");
  analyze_cmd->add_option("--rank-metric", analyze.rank_metric, "count | duration_min | max_gbps")
      ->capture_default_str();

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Train one LSTM forecaster");
  train_cmd->add_option("records", train_opts.records, "Records file")->required();
  add_series(train_cmd, train_opts.series);
  train_cmd->add_option("--window,-W", train_opts.window)->capture_default_str();
  train_cmd->add_option("--hidden,-H", train_opts.hidden)->capture_default_str();
  train_cmd->add_option("--epochs", train_opts.epochs)->capture_default_str();
  train_cmd->add_option("--batch", train_opts.batch)->capture_default_str();
  train_cmd->add_option("--lr", train_opts.lr)->capture_default_str();
  train_cmd->add_option("--clip", train_opts.clip, "Global gradient norm cap (0 disables)")
      ->capture_default_str();

  GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid", "Sweep window and hidden sizes");
  grid_cmd->add_option("records", grid.records, "Records file")->required();
  add_series(grid_cmd, grid.series);
  grid_cmd->add_option("--windows", grid.windows)->delimiter(',')->capture_default_str();
  grid_cmd->add_option("--hiddens", grid.hiddens)->delimiter(',')->capture_default_str();
  grid_cmd->add_option("--epochs", grid.epochs)->capture_default_str();
  grid_cmd->add_option("--batch", grid.batch)->capture_default_str();
  grid_cmd->add_option("--lr", grid.lr)->capture_default_str();
  grid_cmd->add_option("--clip", grid.clip)->capture_default_str();
  grid_cmd->add_option("--threads", grid.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  ForecastOptions forecast;
  auto* forecast_cmd = app.add_subcommand("forecast", "Predicted-vs-actual CSV and SVG");
  forecast_cmd->add_option("records", forecast.records, "Records file")->required();
  forecast_cmd->add_option("--checkpoint", forecast.checkpoint, "checkpoint.json from train")
      ->required();
  forecast_cmd->add_option("--split", forecast.split, "train | validation | test")
      ->capture_default_str();

  std::string manifest_path;
  std::optional<std::string> replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();
  replay_cmd->add_option("--into", replay_out, "Output root for the replay");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << DDOSFC_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ddosfc: " << e.what() << "\n";
    return kExitFailure;
  }
  common.out_root = out_root;

  if (*ingest_cmd) return cmd_ingest(common, ingest, out, err);
  if (*analyze_cmd) {
    analyze.year_a = year_a;
    analyze.year_b = year_b;
    return cmd_analyze(common, analyze, out, err);
  }
  if (*train_cmd) return cmd_train(common, train_opts, out, err);
  if (*grid_cmd) return cmd_grid(common, grid, out, err);
  if (*forecast_cmd) return cmd_forecast(common, forecast, out, err);
  if (*replay_cmd) return cmd_replay(manifest_path, replay_out, out, err);
  return kExitFailure;
}

}  // namespace ddosfc::cli
