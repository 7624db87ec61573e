#include "ddosfc/metrics.hpp"

#include <cmath>
#include <string>

#include "ddosfc/error.hpp"

namespace ddosfc {

namespace {

void check_lengths(std::span<const double> targets, std::span<const double> predictions) {
  if (targets.size() != predictions.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(targets.size()) + " targets vs " +
                                                std::to_string(predictions.size()) +
                                                " predictions");
  }
  if (targets.empty()) throw Error(ErrorCode::kEmptyInput, "no values to score");
}

}  // namespace

double mse(std::span<const double> targets, std::span<const double> predictions) {
  check_lengths(targets, predictions);
  double sum = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double e = targets[j] - predictions[j];
    sum += e * e;
  }
  return sum / static_cast<double>(targets.size());
}

double mae(std::span<const double> targets, std::span<const double> predictions) {
  check_lengths(targets, predictions);
  double sum = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) sum += std::abs(targets[j] - predictions[j]);
  return sum / static_cast<double>(targets.size());
}

}  // namespace ddosfc
