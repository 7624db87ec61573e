#include "ddosfc/lstm.hpp"

#include <algorithm>
#include <cmath>

#include "ddosfc/error.hpp"
#include "ddosfc/random.hpp"

namespace ddosfc {

namespace {

constexpr std::array<const char*, 4> kGateSuffix = {"i", "f", "o", "g"};

// Modified Gram-Schmidt over the columns of a seeded uniform matrix. Only
// +,-,*,/ and sqrt are involved, all correctly rounded, so the result does not
// depend on the platform's libm.
void orthogonal_fill(std::span<double> m, std::size_t n, Rng& rng) {
  for (std::size_t col = 0; col < n; ++col) {
    std::span<double> v = m.subspan(col * n, n);
    while (true) {
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
      for (std::size_t prev = 0; prev < col; ++prev) {
        std::span<const double> q = m.subspan(prev * n, n);
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += q[r] * v[r];
        for (std::size_t r = 0; r < n; ++r) v[r] -= dot * q[r];
      }
      double norm2 = 0.0;
      for (double x : v) norm2 += x * x;
      // A nearly dependent draw would amplify rounding error; redraw instead.
      if (norm2 > 1e-6) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) x *= inv;
        break;
      }
    }
  }
}

void check_finite(std::span<const double> h, std::span<const double> c) {
  for (std::size_t r = 0; r < h.size(); ++r) {
    if (!std::isfinite(h[r]) || !std::isfinite(c[r])) {
      throw Error(ErrorCode::kNonFiniteState, "LSTM state became non-finite");
    }
  }
}

// Pre-activations for all four gates: pre[g * H + r].
void gate_preactivations(const LstmParams& p, double x, std::span<const double> h_prev,
                         std::span<double> pre) {
  const std::size_t hidden = p.hidden();
  for (Gate g : kGates) {
    std::span<double> out = pre.subspan(static_cast<std::size_t>(g) * hidden, hidden);
    std::span<const double> w = p.w(g);
    std::span<const double> b = p.b(g);
    for (std::size_t r = 0; r < hidden; ++r) out[r] = w[r] * x + b[r];
    std::span<const double> u = p.u(g);
    for (std::size_t c = 0; c < hidden; ++c) {
      const double hc = h_prev[c];
      const double* col = u.data() + c * hidden;
      double* o = out.data();
      for (std::size_t r = 0; r < hidden; ++r) o[r] += col[r] * hc;
    }
  }
}

}  // namespace

LstmParams::LstmParams(std::size_t hidden)
    : hidden_(hidden), data_(parameter_count(hidden), 0.0) {}

std::vector<LstmParams::Block> LstmParams::blocks() const {
  std::vector<Block> out;
  for (Gate g : kGates) {
    const std::size_t base = static_cast<std::size_t>(g) * gate_stride();
    const std::string sfx = kGateSuffix[static_cast<std::size_t>(g)];
    out.push_back({"W_" + sfx, base, hidden_});
    out.push_back({"U_" + sfx, base + hidden_, hidden_ * hidden_});
    out.push_back({"b_" + sfx, base + hidden_ + hidden_ * hidden_, hidden_});
  }
  out.push_back({"w_y", head_offset(), hidden_});
  out.push_back({"b_y", head_offset() + hidden_, 1});
  return out;
}

void LstmParams::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool LstmParams::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

LstmParams init_model(std::size_t hidden, std::uint64_t seed) {
  if (hidden == 0) throw Error(ErrorCode::kInvalidArgument, "hidden size must be at least 1");
  LstmParams p(hidden);
  Rng rng(seed);
  // fan_in 1, fan_out H for the input weights; fan_in H, fan_out 1 for the head.
  const double limit = std::sqrt(6.0 / (1.0 + static_cast<double>(hidden)));
  for (Gate g : kGates) {
    for (double& v : p.w(g)) v = rng.uniform(-limit, limit);
    orthogonal_fill(p.u(g), hidden, rng);
    std::fill(p.b(g).begin(), p.b(g).end(), g == Gate::kForget ? 1.0 : 0.0);
  }
  for (double& v : p.w_y()) v = rng.uniform(-limit, limit);
  p.b_y() = 0.0;
  return p;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

LstmState lstm_step(const LstmParams& params, double x, const LstmState& state) {
  const std::size_t hidden = params.hidden();
  if (state.h.size() != hidden || state.c.size() != hidden) {
    throw Error(ErrorCode::kInvalidArgument, "state size does not match the hidden size");
  }
  check_finite(state.h, state.c);
  std::vector<double> pre(4 * hidden);
  gate_preactivations(params, x, state.h, pre);
  LstmState next = LstmState::zeros(hidden);
  for (std::size_t r = 0; r < hidden; ++r) {
    const double i = sigmoid(pre[r]);
    const double f = sigmoid(pre[hidden + r]);
    const double o = sigmoid(pre[2 * hidden + r]);
    const double g = std::tanh(pre[3 * hidden + r]);
    next.c[r] = f * state.c[r] + i * g;
    next.h[r] = o * std::tanh(next.c[r]);
  }
  check_finite(next.h, next.c);
  return next;
}

double forward(const LstmParams& params, std::span<const double> window, ForwardCache& cache) {
  const std::size_t hidden = params.hidden();
  const std::size_t steps = window.size();
  cache.window = steps;
  cache.hidden = hidden;
  cache.x.assign(window.begin(), window.end());
  cache.h.assign((steps + 1) * hidden, 0.0);
  cache.c.assign((steps + 1) * hidden, 0.0);
  cache.gate_i.resize(steps * hidden);
  cache.gate_f.resize(steps * hidden);
  cache.gate_o.resize(steps * hidden);
  cache.gate_g.resize(steps * hidden);
  cache.tanh_c.resize(steps * hidden);

  thread_local std::vector<double> pre;
  pre.resize(4 * hidden);
  for (std::size_t t = 0; t < steps; ++t) {
    const double* h_prev = cache.h.data() + t * hidden;
    const double* c_prev = cache.c.data() + t * hidden;
    double* h = cache.h.data() + (t + 1) * hidden;
    double* c = cache.c.data() + (t + 1) * hidden;
    gate_preactivations(params, window[t], std::span<const double>(h_prev, hidden), pre);
    const std::size_t row = t * hidden;
    for (std::size_t r = 0; r < hidden; ++r) {
      const double i = sigmoid(pre[r]);
      const double f = sigmoid(pre[hidden + r]);
      const double o = sigmoid(pre[2 * hidden + r]);
      const double g = std::tanh(pre[3 * hidden + r]);
      c[r] = f * c_prev[r] + i * g;
      const double tc = std::tanh(c[r]);
      h[r] = o * tc;
      cache.gate_i[row + r] = i;
      cache.gate_f[row + r] = f;
      cache.gate_o[row + r] = o;
      cache.gate_g[row + r] = g;
      cache.tanh_c[row + r] = tc;
    }
    check_finite(std::span<const double>(h, hidden), std::span<const double>(c, hidden));
  }

  std::span<const double> h_last = cache.final_hidden();
  std::span<const double> w_y = params.w_y();
  double y = params.b_y();
  for (std::size_t r = 0; r < hidden; ++r) y += w_y[r] * h_last[r];
  cache.prediction = y;
  return y;
}

ForwardResult forward(const LstmParams& params, std::span<const double> window) {
  ForwardResult result;
  result.prediction = forward(params, window, result.cache);
  return result;
}

double predict(const LstmParams& params, std::span<const double> window) {
  thread_local ForwardCache scratch;
  return forward(params, window, scratch);
}

void backward(const LstmParams& params, std::span<const ForwardCache> caches,
              std::span<const double> targets, LstmGradients& grads) {
  const std::size_t hidden = params.hidden();
  if (caches.size() != targets.size() || caches.empty()) {
    throw Error(ErrorCode::kCacheMismatch, "got " + std::to_string(caches.size()) +
                                               " caches for " + std::to_string(targets.size()) +
                                               " targets");
  }
  for (const auto& cache : caches) {
    if (cache.hidden != hidden || cache.h.size() != (cache.window + 1) * hidden ||
        cache.gate_i.size() != cache.window * hidden) {
      throw Error(ErrorCode::kCacheMismatch, "cache shape does not match the parameters");
    }
  }
  if (grads.hidden() != hidden) grads = LstmGradients(hidden);
  grads.fill(0.0);

  // Row-major copies of U (U^T in column-major terms) turn dh_prev = U^T da
  // into contiguous axpy updates.
  thread_local std::vector<double> u_t;
  u_t.resize(4 * hidden * hidden);
  for (Gate g : kGates) {
    std::span<const double> u = params.u(g);
    double* dst = u_t.data() + static_cast<std::size_t>(g) * hidden * hidden;
    for (std::size_t c = 0; c < hidden; ++c) {
      for (std::size_t r = 0; r < hidden; ++r) dst[r * hidden + c] = u[c * hidden + r];
    }
  }

  std::array<std::span<double>, 4> dw;
  std::array<std::span<double>, 4> du;
  std::array<std::span<double>, 4> db;
  for (Gate g : kGates) {
    const auto k = static_cast<std::size_t>(g);
    dw[k] = grads.w(g);
    du[k] = grads.u(g);
    db[k] = grads.b(g);
  }
  std::span<double> dw_y = grads.w_y();
  std::span<const double> w_y = params.w_y();

  thread_local std::vector<double> dh;
  thread_local std::vector<double> dh_prev;
  thread_local std::vector<double> dc;
  thread_local std::vector<double> da;  // 4 x H, gate-major
  dh.resize(hidden);
  dh_prev.resize(hidden);
  dc.resize(hidden);
  da.resize(4 * hidden);

  const double scale = 2.0 / static_cast<double>(caches.size());
  for (std::size_t b = 0; b < caches.size(); ++b) {
    const ForwardCache& cache = caches[b];
    const double dy = scale * (cache.prediction - targets[b]);
    std::span<const double> h_last = cache.final_hidden();
    for (std::size_t r = 0; r < hidden; ++r) {
      dw_y[r] += dy * h_last[r];
      dh[r] = dy * w_y[r];
      dc[r] = 0.0;
    }
    grads.b_y() += dy;

    for (std::size_t t = cache.window; t-- > 0;) {
      const std::size_t row = t * hidden;
      const double* gi = cache.gate_i.data() + row;
      const double* gf = cache.gate_f.data() + row;
      const double* go = cache.gate_o.data() + row;
      const double* gg = cache.gate_g.data() + row;
      const double* tc = cache.tanh_c.data() + row;
      const double* c_prev = cache.c.data() + row;
      const double* h_prev = cache.h.data() + row;
      double* da_i = da.data();
      double* da_f = da.data() + hidden;
      double* da_o = da.data() + 2 * hidden;
      double* da_g = da.data() + 3 * hidden;
      for (std::size_t r = 0; r < hidden; ++r) {
        const double dct = dc[r] + dh[r] * go[r] * (1.0 - tc[r] * tc[r]);
        da_i[r] = dct * gg[r] * gi[r] * (1.0 - gi[r]);
        da_f[r] = dct * c_prev[r] * gf[r] * (1.0 - gf[r]);
        da_o[r] = dh[r] * tc[r] * go[r] * (1.0 - go[r]);
        da_g[r] = dct * gi[r] * (1.0 - gg[r] * gg[r]);
        dc[r] = dct * gf[r];
      }

      const double x = cache.x[t];
      std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
      for (std::size_t k = 0; k < 4; ++k) {
        const double* a = da.data() + k * hidden;
        double* dwk = dw[k].data();
        double* dbk = db[k].data();
        for (std::size_t r = 0; r < hidden; ++r) {
          dwk[r] += a[r] * x;
          dbk[r] += a[r];
        }
        double* duk = du[k].data();
        for (std::size_t c = 0; c < hidden; ++c) {
          const double hc = h_prev[c];
          double* col = duk + c * hidden;
          for (std::size_t r = 0; r < hidden; ++r) col[r] += a[r] * hc;
        }
        const double* ut = u_t.data() + k * hidden * hidden;
        double* dhp = dh_prev.data();
        for (std::size_t r = 0; r < hidden; ++r) {
          const double ar = a[r];
          const double* urow = ut + r * hidden;
          for (std::size_t c = 0; c < hidden; ++c) dhp[c] += ar * urow[c];
        }
      }
      std::swap(dh, dh_prev);
    }
  }
}

LstmGradients backward(const LstmParams& params, std::span<const ForwardCache> caches,
                       std::span<const double> targets) {
  LstmGradients grads(params.hidden());
  backward(params, caches, targets, grads);
  return grads;
}

}  // namespace ddosfc
