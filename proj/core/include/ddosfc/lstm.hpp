#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ddosfc {

enum class Gate : std::size_t { kInput = 0, kForget = 1, kOutput = 2, kCandidate = 3 };

inline constexpr std::array<Gate, 4> kGates = {Gate::kInput, Gate::kForget, Gate::kOutput,
                                               Gate::kCandidate};

/// Parameters of a single-layer univariate LSTM with a linear dense head,
/// held in one contiguous buffer so optimizers, gradient checks and
/// checkpoints can treat them as a flat vector.
///
/// Layout, per gate in kGates order: W (H), U (H x H), b (H); then the head
/// weights w_y (H) and bias b_y (1). U is column-major: element [c * H + r]
/// couples the previous hidden unit c to gate unit r.
class LstmParams {
 public:
  struct Block {
    std::string name;
    std::size_t offset;
    std::size_t length;
  };

  LstmParams() = default;
  explicit LstmParams(std::size_t hidden);

  static std::size_t parameter_count(std::size_t hidden) {
    return 4 * (hidden + hidden * hidden + hidden) + hidden + 1;
  }

  std::size_t hidden() const { return hidden_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  std::span<double> w(Gate g) { return block(g, 0, hidden_); }
  std::span<const double> w(Gate g) const { return block(g, 0, hidden_); }
  std::span<double> u(Gate g) { return block(g, hidden_, hidden_ * hidden_); }
  std::span<const double> u(Gate g) const { return block(g, hidden_, hidden_ * hidden_); }
  std::span<double> b(Gate g) { return block(g, hidden_ + hidden_ * hidden_, hidden_); }
  std::span<const double> b(Gate g) const { return block(g, hidden_ + hidden_ * hidden_, hidden_); }
  std::span<double> w_y() { return std::span<double>(data_).subspan(head_offset(), hidden_); }
  std::span<const double> w_y() const {
    return std::span<const double>(data_).subspan(head_offset(), hidden_);
  }
  double& b_y() { return data_.back(); }
  double b_y() const { return data_.back(); }

  /// Named blocks in layout order: W_i, U_i, b_i, W_f, ..., w_y, b_y.
  std::vector<Block> blocks() const;

  void fill(double v);
  bool all_finite() const;

  friend bool operator==(const LstmParams&, const LstmParams&) = default;

 private:
  std::size_t gate_stride() const { return 2 * hidden_ + hidden_ * hidden_; }
  std::size_t head_offset() const { return 4 * gate_stride(); }
  std::span<double> block(Gate g, std::size_t off, std::size_t len) {
    return std::span<double>(data_).subspan(static_cast<std::size_t>(g) * gate_stride() + off, len);
  }
  std::span<const double> block(Gate g, std::size_t off, std::size_t len) const {
    return std::span<const double>(data_).subspan(static_cast<std::size_t>(g) * gate_stride() + off,
                                                  len);
  }

  std::size_t hidden_ = 0;
  std::vector<double> data_;
};

/// Gradients share the parameter layout.
using LstmGradients = LstmParams;

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;

  static LstmState zeros(std::size_t hidden) {
    return {std::vector<double>(hidden, 0.0), std::vector<double>(hidden, 0.0)};
  }
};

/// Glorot-uniform input and head weights, orthogonal recurrent matrices (one
/// per gate, Gram-Schmidt on a seeded uniform matrix), zero biases except the
/// forget gate at 1. Deterministic per (hidden, seed).
LstmParams init_model(std::size_t hidden, std::uint64_t seed);

double sigmoid(double x);

/// One cell update:
///   i = s(W_i x + U_i h + b_i)   f = s(W_f x + U_f h + b_f)
///   o = s(W_o x + U_o h + b_o)   g = tanh(W_g x + U_g h + b_g)
///   c' = f*c + i*g               h' = o*tanh(c')
/// Throws NonFiniteState if the new state is not finite.
LstmState lstm_step(const LstmParams& params, double x, const LstmState& state);

/// Activations retained by forward() for backpropagation through time.
/// Per-step arrays are W x H, row t holding step t; h and c hold W + 1 rows
/// with row 0 the zero initial state.
struct ForwardCache {
  std::size_t window = 0;
  std::size_t hidden = 0;
  std::vector<double> x;
  std::vector<double> h;
  std::vector<double> c;
  std::vector<double> gate_i;
  std::vector<double> gate_f;
  std::vector<double> gate_o;
  std::vector<double> gate_g;
  std::vector<double> tanh_c;
  double prediction = 0.0;

  std::span<const double> h_at(std::size_t t) const {
    return std::span<const double>(h).subspan(t * hidden, hidden);
  }
  std::span<const double> final_hidden() const { return h_at(window); }
};

/// Runs the window from a zero state and applies the linear head to the last
/// hidden state. Reuses the cache's storage.
double forward(const LstmParams& params, std::span<const double> window, ForwardCache& cache);

struct ForwardResult {
  double prediction = 0.0;
  ForwardCache cache;
};

ForwardResult forward(const LstmParams& params, std::span<const double> window);

/// Prediction only; keeps a per-thread scratch cache.
double predict(const LstmParams& params, std::span<const double> window);

/// Exact gradient of the batch-mean squared error
///   L = (1/B) sum_b (prediction_b - target_b)^2
/// with respect to every parameter, accumulated over all timesteps.
/// Throws CacheMismatch when the caches do not match the targets or params.
LstmGradients backward(const LstmParams& params, std::span<const ForwardCache> caches,
                       std::span<const double> targets);

/// As above, writing into grads (resized and zeroed as needed).
void backward(const LstmParams& params, std::span<const ForwardCache> caches,
              std::span<const double> targets, LstmGradients& grads);

}  // namespace ddosfc
