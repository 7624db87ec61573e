#pragma once

#include <span>

namespace ddosfc {

/// (1/N) sum (y - y_hat)^2. Throws LengthMismatch or EmptyInput.
double mse(std::span<const double> targets, std::span<const double> predictions);

/// (1/N) sum |y - y_hat|. Throws LengthMismatch or EmptyInput.
double mae(std::span<const double> targets, std::span<const double> predictions);

}  // namespace ddosfc
