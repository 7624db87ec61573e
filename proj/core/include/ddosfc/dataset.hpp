#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddosfc {

enum class NormalizationSource { kFullSeries, kTrainOnly };

std::string_view to_string(NormalizationSource s);
std::optional<NormalizationSource> parse_normalization_source(std::string_view text);

/// Scale used to normalize a series. The mean is recorded but never
/// subtracted: values are divided by the sample standard deviation only.
struct NormalizationStats {
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t n = 0;
  NormalizationSource source = NormalizationSource::kFullSeries;
};

/// Sample standard deviation (N - 1 denominator), Welford's single pass.
/// Throws TooFewValues for fewer than two values.
double std_dev(std::span<const double> values);

/// Computes sigma and mu over the whole series or over its training slice.
NormalizationStats compute_normalization(std::span<const double> values,
                                         NormalizationSource source);

/// values[i] / sigma. Throws DegenerateSigma when sigma is not positive.
std::vector<double> normalize(std::span<const double> values, const NormalizationStats& stats);
std::vector<double> denormalize(std::span<const double> values, const NormalizationStats& stats);

enum class SplitName { kTrain, kValidation, kTest };

std::string_view to_string(SplitName s);
std::optional<SplitName> parse_split_name(std::string_view text);

/// Chronological 50/20/30 split: floor for train and validation, the
/// remainder goes to test.
struct SplitSeries {
  std::vector<double> train;
  std::vector<double> validation;
  std::vector<double> test;

  const std::vector<double>& part(SplitName s) const;
  /// Index of the part's first element within the original series.
  std::size_t offset(SplitName s) const;
};

/// Throws SeriesTooShort for fewer than 10 values.
SplitSeries split(std::span<const double> values);

struct Sample {
  std::vector<double> x;
  double y = 0.0;
};

/// Sample i is (values[i .. i+W), values[i+W]); max(0, L - W) samples.
/// Throws InvalidArgument for W == 0.
std::vector<Sample> make_windows(std::span<const double> values, std::size_t window);

/// Throws SeriesTooShortForWindow unless the series splits and every split
/// holds at least window + 1 values (one sample each).
void require_window_fits(std::size_t series_length, std::size_t window);

/// Normalized, split and windowed series. Windows never straddle a split
/// boundary.
struct WindowedDataset {
  std::size_t window = 0;
  NormalizationStats normalization;
  SplitSeries normalized;
  std::vector<Sample> train;
  std::vector<Sample> validation;
  std::vector<Sample> test;

  const std::vector<Sample>& samples(SplitName s) const;
  /// Position in the original series of sample i's target.
  std::size_t target_index(SplitName s, std::size_t i) const;
};

WindowedDataset build_windowed_dataset(std::span<const double> values, std::size_t window,
                                       NormalizationSource source = NormalizationSource::kFullSeries);

/// split,sample_index,x_0..x_{W-1},y
std::string to_csv(const WindowedDataset& ds);

}  // namespace ddosfc
