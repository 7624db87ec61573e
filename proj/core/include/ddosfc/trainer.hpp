#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddosfc/dataset.hpp"
#include "ddosfc/error.hpp"
#include "ddosfc/lstm.hpp"
#include "ddosfc/rmsprop.hpp"

namespace ddosfc {

struct TrainConfig {
  std::size_t window = 24;
  std::size_t hidden = 64;
  double learning_rate = 0.0002;
  std::size_t epochs = 100;
  double rho = 0.9;
  double epsilon = 1e-7;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  double clip_norm = 5.0;  // global gradient norm cap; <= 0 disables clipping

  /// Throws InvalidArgument.
  void validate() const;
};

struct EpochRecord {
  double train_mse = 0.0;
  std::optional<double> validation_mse;  // absent when the validation split has no samples
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;

  std::size_t size() const { return epochs.size(); }
};

/// epoch,train_mse,validation_mse (1-based epochs, shortest round-trip numbers).
std::string to_csv(const TrainHistory& history);

/// Raised when the training loss stops being finite; carries the epochs that
/// completed before the failure.
class TrainDiverged : public Error {
 public:
  TrainDiverged(const std::string& message, TrainHistory partial)
      : Error(ErrorCode::kDivergedNonFinite, message), partial_(std::move(partial)) {}

  const TrainHistory& partial_history() const { return partial_; }

 private:
  TrainHistory partial_;
};

struct TrainResult {
  LstmParams params;
  RmsPropState optimizer;
  TrainHistory history;
};

using EpochCallback = std::function<void(std::size_t epoch, const EpochRecord&)>;

/// Mini-batch RMSprop over the training split. Each epoch shuffles the sample
/// order with a generator seeded from config.seed, takes one optimizer step per
/// batch (the last batch may be short), then scores the full training and
/// validation splits. Fully deterministic for a given (params, dataset,
/// config). Throws TrainSetEmpty or TrainDiverged.
TrainResult train(LstmParams params, const WindowedDataset& dataset, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

/// Mean squared error of the model over a set of samples.
double evaluate_mse(const LstmParams& params, const std::vector<Sample>& samples);

struct SeriesPrediction {
  std::vector<double> targets;
  std::vector<double> predictions;
};

/// One-step-ahead predictions for every sample of a split, chronological, in
/// normalized units. Throws EmptySplit.
SeriesPrediction predict_series(const LstmParams& params, const WindowedDataset& dataset,
                                SplitName split);

/// As predict_series with both vectors multiplied by the normalization sigma.
SeriesPrediction predict_series_denormalized(const LstmParams& params,
                                             const WindowedDataset& dataset, SplitName split);

}  // namespace ddosfc
