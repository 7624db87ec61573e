#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ddosfc/lstm.hpp"

namespace ddosfc::testing {

// Direct evaluation of the cell and head in extended precision, written
// against the documented flat layout rather than the LstmParams accessors.
struct LstmOracle {
  using ld = long double;

  std::size_t H;
  std::vector<ld> p;

  explicit LstmOracle(const LstmParams& params)
      : H(params.hidden()), p(params.values().begin(), params.values().end()) {}

  ld at(std::size_t gate, std::size_t part_offset, std::size_t k) const {
    return p[gate * (2 * H + H * H) + part_offset + k];
  }
  ld pre(std::size_t gate, std::size_t r, ld x, const std::vector<ld>& h) const {
    ld s = at(gate, 0, r) * x + at(gate, H + H * H, r);
    for (std::size_t c = 0; c < H; ++c) s += at(gate, H, c * H + r) * h[c];
    return s;
  }
  static ld sig(ld v) { return 1.0L / (1.0L + std::exp(-v)); }

  void step(ld x, std::vector<ld>& h, std::vector<ld>& c) const {
    std::vector<ld> h2(H), c2(H);
    for (std::size_t r = 0; r < H; ++r) {
      const ld i = sig(pre(0, r, x, h));
      const ld f = sig(pre(1, r, x, h));
      const ld o = sig(pre(2, r, x, h));
      const ld g = std::tanh(pre(3, r, x, h));
      c2[r] = f * c[r] + i * g;
      h2[r] = o * std::tanh(c2[r]);
    }
    h = h2;
    c = c2;
  }
  ld predict(std::span<const double> window) const {
    std::vector<ld> h(H, 0), c(H, 0);
    for (double x : window) step(x, h, c);
    const std::size_t head = 4 * (2 * H + H * H);
    ld y = p[head + H];
    for (std::size_t k = 0; k < H; ++k) y += p[head + k] * h[k];
    return y;
  }
  ld loss(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys) const {
    ld sum = 0;
    for (std::size_t b = 0; b < xs.size(); ++b) {
      const ld e = predict(xs[b]) - ys[b];
      sum += e * e;
    }
    return sum / xs.size();
  }

  /// Worst relative disagreement between central differences of the oracle
  /// loss and the given analytic gradient, with the denominator floored at
  /// 1e-8.
  double worst_gradient_error(const std::vector<std::vector<double>>& xs,
                              const std::vector<double>& ys, std::span<const double> analytic,
                              ld step = 1e-5L) {
    double worst = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const ld saved = p[k];
      p[k] = saved + step;
      const ld up = loss(xs, ys);
      p[k] = saved - step;
      const ld down = loss(xs, ys);
      p[k] = saved;
      const double numeric = static_cast<double>((up - down) / (2 * step));
      const double denom = std::max({std::abs(numeric), std::abs(analytic[k]), 1e-8});
      worst = std::max(worst, std::abs(numeric - analytic[k]) / denom);
    }
    return worst;
  }
};

}  // namespace ddosfc::testing
