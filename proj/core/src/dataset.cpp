#include "ddosfc/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "ddosfc/csv.hpp"
#include "ddosfc/error.hpp"

namespace ddosfc {

std::string_view to_string(NormalizationSource s) {
  return s == NormalizationSource::kFullSeries ? "full" : "train";
}

std::optional<NormalizationSource> parse_normalization_source(std::string_view text) {
  if (text == "full") return NormalizationSource::kFullSeries;
  if (text == "train") return NormalizationSource::kTrainOnly;
  return std::nullopt;
}

double std_dev(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewValues, "standard deviation needs at least two values, got " +
                                              std::to_string(values.size()));
  }
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : values) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  return std::sqrt(m2 / static_cast<double>(values.size() - 1));
}

NormalizationStats compute_normalization(std::span<const double> values,
                                         NormalizationSource source) {
  std::span<const double> slice = values;
  if (source == NormalizationSource::kTrainOnly) slice = values.first(values.size() / 2);
  NormalizationStats stats;
  stats.source = source;
  stats.n = slice.size();
  stats.sigma = std_dev(slice);
  double sum = 0.0;
  for (double v : slice) sum += v;
  stats.mu = sum / static_cast<double>(slice.size());
  return stats;
}

std::vector<double> normalize(std::span<const double> values, const NormalizationStats& stats) {
  if (!(stats.sigma > 0.0) || !std::isfinite(stats.sigma)) {
    throw Error(ErrorCode::kDegenerateSigma,
                "sigma is " + format_number(stats.sigma) + "; a constant series cannot be normalized");
  }
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= stats.sigma;
  return out;
}

std::vector<double> denormalize(std::span<const double> values, const NormalizationStats& stats) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v *= stats.sigma;
  return out;
}

std::string_view to_string(SplitName s) {
  switch (s) {
    case SplitName::kTrain: return "train";
    case SplitName::kValidation: return "validation";
    case SplitName::kTest: return "test";
  }
  return "?";
}

std::optional<SplitName> parse_split_name(std::string_view text) {
  for (auto s : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

const std::vector<double>& SplitSeries::part(SplitName s) const {
  switch (s) {
    case SplitName::kTrain: return train;
    case SplitName::kValidation: return validation;
    case SplitName::kTest: return test;
  }
  return test;
}

std::size_t SplitSeries::offset(SplitName s) const {
  switch (s) {
    case SplitName::kTrain: return 0;
    case SplitName::kValidation: return train.size();
    case SplitName::kTest: return train.size() + validation.size();
  }
  return 0;
}

SplitSeries split(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 10) {
    throw Error(ErrorCode::kSeriesTooShort,
                "a 50/20/30 split needs at least 10 values, got " + std::to_string(n));
  }
  const std::size_t n_train = n * 5 / 10;
  const std::size_t n_val = n * 2 / 10;
  SplitSeries s;
  s.train.assign(values.begin(), values.begin() + n_train);
  s.validation.assign(values.begin() + n_train, values.begin() + n_train + n_val);
  s.test.assign(values.begin() + n_train + n_val, values.end());
  return s;
}

std::vector<Sample> make_windows(std::span<const double> values, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::kInvalidArgument, "window size must be at least 1");
  std::vector<Sample> samples;
  if (values.size() <= window) return samples;
  samples.reserve(values.size() - window);
  for (std::size_t i = 0; i + window < values.size(); ++i) {
    samples.push_back({std::vector<double>(values.begin() + i, values.begin() + i + window),
                       values[i + window]});
  }
  return samples;
}

void require_window_fits(std::size_t series_length, std::size_t window) {
  const std::size_t n_train = series_length * 5 / 10;
  const std::size_t n_val = series_length * 2 / 10;
  const std::size_t n_test = series_length - n_train - n_val;
  const std::size_t smallest = std::min({n_train, n_val, n_test});
  if (series_length < 10 || smallest < window + 1) {
    throw Error(ErrorCode::kSeriesTooShortForWindow,
                "window " + std::to_string(window) + " needs every split to hold at least " +
                    std::to_string(window + 1) + " values; a series of length " +
                    std::to_string(series_length) + " gives splits of " + std::to_string(n_train) +
                    "/" + std::to_string(n_val) + "/" + std::to_string(n_test));
  }
}

const std::vector<Sample>& WindowedDataset::samples(SplitName s) const {
  switch (s) {
    case SplitName::kTrain: return train;
    case SplitName::kValidation: return validation;
    case SplitName::kTest: return test;
  }
  return test;
}

std::size_t WindowedDataset::target_index(SplitName s, std::size_t i) const {
  return normalized.offset(s) + i + window;
}

WindowedDataset build_windowed_dataset(std::span<const double> values, std::size_t window,
                                       NormalizationSource source) {
  WindowedDataset ds;
  ds.window = window;
  ds.normalization = compute_normalization(values, source);
  const std::vector<double> scaled = normalize(values, ds.normalization);
  ds.normalized = split(scaled);
  ds.train = make_windows(ds.normalized.train, window);
  ds.validation = make_windows(ds.normalized.validation, window);
  ds.test = make_windows(ds.normalized.test, window);
  return ds;
}

std::string to_csv(const WindowedDataset& ds) {
  std::vector<std::string> header = {"split", "sample_index"};
  for (std::size_t i = 0; i < ds.window; ++i) header.push_back("x_" + std::to_string(i));
  header.emplace_back("y");
  CsvWriter csv(header);
  for (auto s : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest}) {
    const auto& samples = ds.samples(s);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::vector<std::string> row = {std::string(to_string(s)), std::to_string(i)};
      for (double v : samples[i].x) row.push_back(format_number(v));
      row.push_back(format_number(samples[i].y));
      csv.row(row);
    }
  }
  return csv.str();
}

}  // namespace ddosfc
