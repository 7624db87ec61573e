#include "ddosfc/evalgrid.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "ddosfc/csv.hpp"
#include "ddosfc/error.hpp"
#include "ddosfc/metrics.hpp"
#include "ddosfc/random.hpp"

namespace ddosfc {

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t window, std::size_t hidden) {
  return mix64(mix64(mix64(master_seed) ^ static_cast<std::uint64_t>(window)) ^
               static_cast<std::uint64_t>(hidden));
}

namespace {

GridCell run_cell(const WindowedDataset& ds, const GridSpec& spec, std::size_t window,
                  std::size_t hidden) {
  const auto started = std::chrono::steady_clock::now();
  GridCell cell;
  cell.window = window;
  cell.hidden = hidden;
  cell.seed = cell_seed(spec.master_seed, window, hidden);

  TrainConfig config = spec.base;
  config.window = window;
  config.hidden = hidden;
  config.seed = cell.seed;
  TrainResult trained = train(init_model(hidden, cell.seed), ds, config);
  cell.train_mse = trained.history.epochs.back().train_mse;
  const SeriesPrediction test = predict_series(trained.params, ds, SplitName::kTest);
  cell.test_mse = mse(test.targets, test.predictions);
  cell.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return cell;
}

}  // namespace

GridResult run_grid(const TimeSeries& series, const GridSpec& spec) {
  if (spec.window_sizes.empty() || spec.hidden_sizes.empty()) {
    throw Error(ErrorCode::kEmptyGrid, "grid needs at least one window and one hidden size");
  }
  const std::set<std::size_t> windows(spec.window_sizes.begin(), spec.window_sizes.end());
  const std::set<std::size_t> hiddens(spec.hidden_sizes.begin(), spec.hidden_sizes.end());

  std::map<std::size_t, WindowedDataset> datasets;
  for (std::size_t w : windows) {
    require_window_fits(series.size(), w);
    datasets.emplace(w, build_windowed_dataset(series.values, w, spec.normalization));
  }

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t w : windows) {
    for (std::size_t h : hiddens) jobs.emplace_back(w, h);
  }

  GridResult result;
  result.master_seed = spec.master_seed;
  result.subclass = series.subclass;
  result.metric = series.metric;

  std::size_t threads = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, jobs.size());

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const auto [w, h] = jobs[k];
      try {
        GridCell cell = run_cell(datasets.at(w), spec, w, h);
        std::lock_guard lock(mu);
        result.cells.emplace(std::make_pair(w, h), cell);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::pair<std::size_t, std::size_t> best_config(const GridResult& result) {
  if (result.empty()) throw Error(ErrorCode::kEmptyGrid, "grid result has no cells");
  const GridCell* best = nullptr;
  for (const auto& [key, cell] : result.cells) {
    if (best == nullptr || cell.test_mse < best->test_mse ||
        (cell.test_mse == best->test_mse &&
         std::tie(cell.hidden, cell.window) < std::tie(best->hidden, best->window))) {
      best = &cell;
    }
  }
  return {best->window, best->hidden};
}

std::string grid_csv(const GridResult& result) {
  CsvWriter csv({"window", "hidden", "train_mse", "test_mse", "wall_ms", "seed"});
  for (const auto& [key, c] : result.cells) {
    csv.row({std::to_string(c.window), std::to_string(c.hidden), format_number(c.train_mse),
             format_number(c.test_mse), format_fixed(c.wall_ms, 1), std::to_string(c.seed)});
  }
  return csv.str();
}

GridResult parse_grid_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  const std::size_t cw = table.column("window");
  const std::size_t ch = table.column("hidden");
  const std::size_t ctr = table.column("train_mse");
  const std::size_t cte = table.column("test_mse");
  const std::size_t cwall = table.column("wall_ms");
  const std::size_t cseed = table.column("seed");
  GridResult result;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::kInvalidArgument, "grid CSV row has the wrong width");
    }
    GridCell cell;
    cell.window = std::stoul(row[cw]);
    cell.hidden = std::stoul(row[ch]);
    cell.train_mse = parse_double(row[ctr]);
    cell.test_mse = parse_double(row[cte]);
    cell.wall_ms = parse_double(row[cwall]);
    cell.seed = std::stoull(row[cseed]);
    result.cells.emplace(std::make_pair(cell.window, cell.hidden), cell);
  }
  return result;
}

namespace {

struct TableShape {
  std::vector<std::size_t> windows;
  std::vector<std::size_t> hiddens;
};

TableShape shape_of(const GridResult& result) {
  if (result.empty()) throw Error(ErrorCode::kEmptyGrid, "grid result has no cells");
  std::set<std::size_t> w;
  std::set<std::size_t> h;
  for (const auto& [key, cell] : result.cells) {
    w.insert(key.first);
    h.insert(key.second);
  }
  return {{w.begin(), w.end()}, {h.begin(), h.end()}};
}

std::string cell_text(const GridResult& result, std::size_t w, std::size_t h, bool train) {
  auto it = result.cells.find({w, h});
  if (it == result.cells.end()) return "-";
  return format_fixed(train ? it->second.train_mse : it->second.test_mse, 4);
}

}  // namespace

std::string render_grid_table(const GridResult& result) {
  const TableShape shape = shape_of(result);
  constexpr int kCol = 11;
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
  };
  std::string out = pad("", 8);
  for (std::size_t h : shape.hiddens) {
    out += pad(std::to_string(h) + " neurons", 2 * kCol);
  }
  out += "\n" + pad("window", 8);
  for (std::size_t k = 0; k < shape.hiddens.size(); ++k) {
    out += pad("Train MSE", kCol) + pad("Test MSE", kCol);
  }
  out += '\n';
  for (std::size_t w : shape.windows) {
    out += pad(std::to_string(w), 8);
    for (std::size_t h : shape.hiddens) {
      out += pad(cell_text(result, w, h, true), kCol) + pad(cell_text(result, w, h, false), kCol);
    }
    out += '\n';
  }
  return out;
}

std::string render_grid_table_csv(const GridResult& result) {
  const TableShape shape = shape_of(result);
  std::vector<std::string> header = {"window"};
  for (std::size_t h : shape.hiddens) {
    header.push_back("train_mse_h" + std::to_string(h));
    header.push_back("test_mse_h" + std::to_string(h));
  }
  CsvWriter csv(header);
  for (std::size_t w : shape.windows) {
    std::vector<std::string> row = {std::to_string(w)};
    for (std::size_t h : shape.hiddens) {
      row.push_back(cell_text(result, w, h, true));
      row.push_back(cell_text(result, w, h, false));
    }
    csv.row(row);
  }
  return csv.str();
}

}  // namespace ddosfc
