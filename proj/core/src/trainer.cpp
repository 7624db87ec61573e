#include "ddosfc/trainer.hpp"

#include <cmath>
#include <numeric>

#include "ddosfc/csv.hpp"
#include "ddosfc/random.hpp"

namespace ddosfc {

void TrainConfig::validate() const {
  if (window == 0) throw Error(ErrorCode::kInvalidArgument, "window must be at least 1");
  if (hidden == 0) throw Error(ErrorCode::kInvalidArgument, "hidden size must be at least 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning rate must be > 0");
  if (epochs == 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be at least 1");
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be at least 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::kInvalidArgument, "rho must be in [0, 1)");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
}

std::string to_csv(const TrainHistory& history) {
  CsvWriter csv({"epoch", "train_mse", "validation_mse"});
  for (std::size_t e = 0; e < history.epochs.size(); ++e) {
    const auto& rec = history.epochs[e];
    csv.row({std::to_string(e + 1), format_number(rec.train_mse),
             rec.validation_mse ? format_number(*rec.validation_mse) : ""});
  }
  return csv.str();
}

double evaluate_mse(const LstmParams& params, const std::vector<Sample>& samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySplit, "no samples to evaluate");
  double sum = 0.0;
  for (const auto& s : samples) {
    const double e = predict(params, s.x) - s.y;
    sum += e * e;
  }
  return sum / static_cast<double>(samples.size());
}

TrainResult train(LstmParams params, const WindowedDataset& dataset, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  config.validate();
  const auto& samples = dataset.train;
  if (samples.empty()) throw Error(ErrorCode::kTrainSetEmpty, "training split has no samples");
  if (params.hidden() != config.hidden) {
    throw Error(ErrorCode::kInvalidArgument, "model hidden size differs from the configuration");
  }

  TrainResult result;
  result.optimizer = RmsPropState::zeros(params.size());

  Rng rng(mix64(config.seed));
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<ForwardCache> caches(std::min(config.batch_size, samples.size()));
  std::vector<double> targets;
  LstmGradients grads(params.hidden());

  try {
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
      }
      for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
        const std::size_t end = std::min(begin + config.batch_size, order.size());
        targets.clear();
        for (std::size_t k = begin; k < end; ++k) {
          const Sample& s = samples[order[k]];
          forward(params, s.x, caches[k - begin]);
          targets.push_back(s.y);
        }
        backward(params, std::span<const ForwardCache>(caches.data(), end - begin), targets,
                 grads);
        const double norm = clip_global_norm(grads.values(), config.clip_norm);
        if (!std::isfinite(norm)) {
          throw TrainDiverged("gradient became non-finite in epoch " + std::to_string(epoch + 1),
                              result.history);
        }
        rmsprop_update(params, grads, result.optimizer, config.learning_rate, config.rho,
                       config.epsilon);
      }

      EpochRecord rec;
      rec.train_mse = evaluate_mse(params, samples);
      if (!dataset.validation.empty()) rec.validation_mse = evaluate_mse(params, dataset.validation);
      if (!std::isfinite(rec.train_mse) ||
          (rec.validation_mse && !std::isfinite(*rec.validation_mse))) {
        throw TrainDiverged("loss became non-finite in epoch " + std::to_string(epoch + 1),
                            result.history);
      }
      result.history.epochs.push_back(rec);
      if (on_epoch) on_epoch(epoch + 1, rec);
    }
  } catch (const TrainDiverged&) {
    throw;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonFiniteState) throw;
    throw TrainDiverged(e.what(), result.history);
  }

  result.params = std::move(params);
  return result;
}

SeriesPrediction predict_series(const LstmParams& params, const WindowedDataset& dataset,
                                SplitName split) {
  const auto& samples = dataset.samples(split);
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptySplit,
                std::string(to_string(split)) + " split has no samples for window " +
                    std::to_string(dataset.window));
  }
  SeriesPrediction out;
  out.targets.reserve(samples.size());
  out.predictions.reserve(samples.size());
  for (const auto& s : samples) {
    out.targets.push_back(s.y);
    out.predictions.push_back(predict(params, s.x));
  }
  return out;
}

SeriesPrediction predict_series_denormalized(const LstmParams& params,
                                             const WindowedDataset& dataset, SplitName split) {
  SeriesPrediction out = predict_series(params, dataset, split);
  out.targets = denormalize(out.targets, dataset.normalization);
  out.predictions = denormalize(out.predictions, dataset.normalization);
  return out;
}

}  // namespace ddosfc
