#include "ddosfc/rmsprop.hpp"

#include <cmath>

#include "ddosfc/error.hpp"

namespace ddosfc {

void rmsprop_update(std::span<double> params, std::span<const double> grads, RmsPropState& state,
                    double learning_rate, double rho, double epsilon) {
  if (state.accum.empty()) state.accum.assign(params.size(), 0.0);
  if (grads.size() != params.size() || state.accum.size() != params.size()) {
    throw Error(ErrorCode::kLengthMismatch, "parameter, gradient and accumulator sizes differ");
  }
  double* a = state.accum.data();
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grads[k];
    a[k] = rho * a[k] + (1.0 - rho) * g * g;
    params[k] -= learning_rate * g / (std::sqrt(a[k]) + epsilon);
  }
}

double clip_global_norm(std::span<double> grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grads) g *= scale;
  }
  return norm;
}

}  // namespace ddosfc
