#pragma once

#include <span>
#include <vector>

#include "ddosfc/lstm.hpp"

namespace ddosfc {

struct RmsPropState {
  std::vector<double> accum;  // running mean of squared gradients, same layout as the params

  static RmsPropState zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
};

/// a <- rho * a + (1 - rho) * g^2;  theta <- theta - lr * g / (sqrt(a) + epsilon)
void rmsprop_update(std::span<double> params, std::span<const double> grads, RmsPropState& state,
                    double learning_rate, double rho, double epsilon);

inline void rmsprop_update(LstmParams& params, const LstmGradients& grads, RmsPropState& state,
                           double learning_rate, double rho, double epsilon) {
  rmsprop_update(params.values(), grads.values(), state, learning_rate, rho, epsilon);
}

/// Rescales grads so their global L2 norm is at most max_norm (no-op when
/// max_norm <= 0). Returns the norm before clipping.
double clip_global_norm(std::span<double> grads, double max_norm);

}  // namespace ddosfc
