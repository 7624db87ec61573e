#include <cmath>
#include <numbers>

#include "ddosfc/error.hpp"
#include "ddosfc/trainer.hpp"
#include "doctest.h"

using namespace ddosfc;

namespace {

std::vector<double> sine(std::size_t n, double period, double offset) {
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t)
    v[t] = offset + 30 * std::sin(2 * std::numbers::pi * static_cast<double>(t) / period);
  return v;
}

TrainConfig small_config(std::size_t window, std::size_t epochs) {
  TrainConfig c;
  c.window = window;
  c.hidden = 8;
  c.epochs = epochs;
  c.learning_rate = 0.005;
  c.seed = 11;
  return c;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("history has one record per epoch and is deterministic") {
  const auto ds = build_windowed_dataset(sine(120, 20, 50), 6);
  const TrainConfig config = small_config(6, 7);
  std::size_t calls = 0;
  const TrainResult a =
      train(init_model(8, 1), ds, config, [&](std::size_t, const EpochRecord&) { ++calls; });
  CHECK(a.history.size() == 7);
  CHECK(calls == 7);
  for (const auto& e : a.history.epochs) {
    CHECK(std::isfinite(e.train_mse));
    CHECK(e.validation_mse.has_value());
  }
  const TrainResult b = train(init_model(8, 1), ds, config);
  CHECK(to_csv(a.history) == to_csv(b.history));
  CHECK(a.params == b.params);
  CHECK(a.optimizer.accum == b.optimizer.accum);
  CHECK(to_csv(a.history).rfind("epoch,train_mse,validation_mse\n1,", 0) == 0);

  TrainConfig other = config;
  other.seed = 12;
  CHECK_FALSE(train(init_model(8, 1), ds, other).params == a.params);

  // The epoch's train MSE is the post-epoch score of the returned model.
  CHECK(a.history.epochs.back().train_mse == evaluate_mse(a.params, ds.train));
}

TEST_CASE("solvable constant task converges") {
  // Constant inputs give a constant final hidden state, so any target is
  // reachable through the head bias alone.
  WindowedDataset ds;
  ds.window = 4;
  for (int i = 0; i < 40; ++i) ds.train.push_back({{1.0, 1.0, 1.0, 1.0}, 0.8});
  TrainConfig config = small_config(4, 100);
  const TrainResult r = train(init_model(8, 3), ds, config);
  CHECK(r.history.epochs.back().train_mse < 1e-3);
  CHECK_FALSE(r.history.epochs.back().validation_mse.has_value());
}

TEST_CASE("noiseless sine: late epochs beat early epochs") {
  const auto ds = build_windowed_dataset(sine(300, 25, 50), 12);
  const TrainResult r = train(init_model(8, 5), ds, small_config(12, 30));
  double first = 0, last = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    first += r.history.epochs[i].train_mse;
    last += r.history.epochs[20 + i].train_mse;
  }
  CHECK(last < first);
}

TEST_CASE("training errors") {
  WindowedDataset empty;
  empty.window = 4;
  CHECK(code_of([&] { train(init_model(8, 1), empty, small_config(4, 1)); }) ==
        ErrorCode::kTrainSetEmpty);

  const auto ds = build_windowed_dataset(sine(120, 20, 50), 6);
  TrainConfig bad = small_config(6, 1);
  bad.batch_size = 0;
  CHECK(code_of([&] { train(init_model(8, 1), ds, bad); }) == ErrorCode::kInvalidArgument);

  TrainConfig wild = small_config(6, 5);
  wild.learning_rate = 1e308;
  wild.clip_norm = 0;
  try {
    train(init_model(8, 1), ds, wild);
    FAIL("expected divergence");
  } catch (const TrainDiverged& e) {
    CHECK(e.code() == ErrorCode::kDivergedNonFinite);
    CHECK(e.partial_history().size() < 5);
  }
}

TEST_CASE("predict_series") {
  const auto ds = build_windowed_dataset(sine(100, 20, 50), 5);
  const LstmParams zero(4);
  const SeriesPrediction z = predict_series(zero, ds, SplitName::kTest);
  CHECK(z.predictions.size() == ds.test.size());
  for (double p : z.predictions) CHECK(p == 0.0);

  const LstmParams p = init_model(4, 9);
  for (SplitName s : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest}) {
    const SeriesPrediction r = predict_series(p, ds, s);
    REQUIRE(r.targets.size() == ds.samples(s).size());
    REQUIRE(r.predictions.size() == ds.samples(s).size());
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      CHECK(r.targets[i] == ds.samples(s)[i].y);
      CHECK(r.predictions[i] == forward(p, ds.samples(s)[i].x).prediction);
    }
    const SeriesPrediction d = predict_series_denormalized(p, ds, s);
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      CHECK(d.targets[i] == r.targets[i] * ds.normalization.sigma);
      CHECK(d.predictions[i] == r.predictions[i] * ds.normalization.sigma);
    }
  }

  WindowedDataset no_test = ds;
  no_test.test.clear();
  CHECK(code_of([&] { predict_series(p, no_test, SplitName::kTest); }) == ErrorCode::kEmptySplit);
}
