#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddosfc/dataset.hpp"
#include "ddosfc/preprocess.hpp"
#include "ddosfc/trainer.hpp"

namespace ddosfc {

struct GridSpec {
  std::vector<std::size_t> window_sizes{8, 16, 24, 32};
  std::vector<std::size_t> hidden_sizes{32, 64, 128};
  /// Learning rate, epochs, optimizer and batching for every cell; its window,
  /// hidden and seed fields are overridden per cell.
  TrainConfig base;
  std::uint64_t master_seed = 0;
  NormalizationSource normalization = NormalizationSource::kFullSeries;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Depends only on (master_seed, window, hidden), so a cell keeps its seed
/// when the grid around it changes.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t window, std::size_t hidden);

struct GridCell {
  std::size_t window = 0;
  std::size_t hidden = 0;
  double train_mse = 0.0;  // final-epoch MSE over the training split
  double test_mse = 0.0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

struct GridResult {
  std::uint64_t master_seed = 0;
  Subclass subclass = Subclass::kTotalTraffic;
  Metric metric = Metric::kCount;
  /// Keyed by (window, hidden).
  std::map<std::pair<std::size_t, std::size_t>, GridCell> cells;

  bool empty() const { return cells.empty(); }
};

/// Trains one model per (window, hidden) pair. Throws
/// SeriesTooShortForWindow naming the first window for which some split has
/// fewer than window + 1 values.
GridResult run_grid(const TimeSeries& series, const GridSpec& spec);

/// Lowest test MSE; ties go to the smaller hidden size, then the smaller
/// window. Throws EmptyGrid.
std::pair<std::size_t, std::size_t> best_config(const GridResult& result);

/// window,hidden,train_mse,test_mse,wall_ms,seed
std::string grid_csv(const GridResult& result);

/// Rows by window size, a train/test column pair per hidden size, four
/// decimals. Throws EmptyGrid.
std::string render_grid_table(const GridResult& result);
/// The same layout as CSV.
std::string render_grid_table_csv(const GridResult& result);

/// Reads back grid_csv output.
GridResult parse_grid_csv(std::string_view text);

}  // namespace ddosfc
