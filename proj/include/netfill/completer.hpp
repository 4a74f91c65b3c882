#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netfill/gin.hpp"
#include "netfill/graph.hpp"
#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"
#include "netfill/tape.hpp"

namespace netfill {

struct CompleterConfig {
  int epochs = 400;
  int warmup = 50;           // epochs before the first sampling event
  int sample_interval = 20;  // epochs between resampling events
  double lr = 3e-3;
  // Layer widths after the one-hot input; the last entry is the embedding
  // size. A single layer is the default: deeper stacks fit the observed
  // block noticeably worse under this loss (see README).
  std::vector<int> dims = {32};
  std::uint64_t seed = 0;

  void validate() const {
    if (epochs < 1) throw std::invalid_argument("CompleterConfig: epochs must be positive");
    if (warmup < 0 || warmup >= epochs)
      throw std::invalid_argument("CompleterConfig: need 0 <= warmup < epochs");
    if (sample_interval < 1)
      throw std::invalid_argument("CompleterConfig: sample_interval must be >= 1");
    if (lr <= 0.0) throw std::invalid_argument("CompleterConfig: lr must be positive");
    if (dims.empty()) throw std::invalid_argument("CompleterConfig: dims must be nonempty");
    for (const int d : dims)
      if (d < 1) throw std::invalid_argument("CompleterConfig: dims must be positive");
  }
};

struct CompleterState {
  Matrix a_hat;  // N x N working adjacency; upper-left n_obs block is pinned to a_obs
  Matrix a_obs;  // observed block, kept for the loss
  GinModel model;
  AdamState opt;
  int n_obs = 0;
  int epoch = 0;
  std::vector<double> loss_trace;
  std::vector<double> gamma_trace;
};

struct CompletionResult {
  Matrix p_final;    // N x N edge probabilities from the trained encoder
  Matrix a_sampled;  // final working adjacency (observed block + last sample)
  std::vector<double> loss_trace;
  std::vector<double> gamma_trace;
};

// Working adjacency starts as a_obs embedded at the upper left with every
// unknown entry zero; the model input width is N = n_obs + n_miss.
inline CompleterState init_state(const PartialGraph& pg, const CompleterConfig& cfg, Rng& rng) {
  cfg.validate();
  const int n = pg.total_n();
  CompleterState state;
  state.n_obs = pg.n_obs;
  state.a_obs = pg.a_obs.to_matrix();
  state.a_hat = Matrix(n, n);
  for (int i = 0; i < pg.n_obs; ++i)
    for (int j = 0; j < pg.n_obs; ++j) state.a_hat(i, j) = state.a_obs(i, j);
  std::vector<int> dims;
  dims.push_back(n);
  dims.insert(dims.end(), cfg.dims.begin(), cfg.dims.end());
  state.model = init_gin(dims, rng);
  return state;
}

// Probability scale factor matching the expected sampled density of the
// inverted-L region to the observed block's density:
//   gamma = (N^2 - N_o^2) / N_o^2 * sum_obs A / (sum_all P - sum_obs P)
// with all sums over unordered off-diagonal pairs. Degenerate denominators
// yield 0, which disables sampling.
inline double compute_gamma(const Matrix& p, const Matrix& a_obs, int n, int n_obs) {
  if (p.rows != n || p.cols != n) throw std::invalid_argument("compute_gamma: p must be n x n");
  if (a_obs.rows < n_obs || a_obs.cols < n_obs)
    throw std::invalid_argument("compute_gamma: a_obs smaller than n_obs");
  if (n_obs < 1 || n_obs > n) throw std::invalid_argument("compute_gamma: bad n_obs");
  double sum_a = 0.0;
  for (int i = 0; i < n_obs; ++i)
    for (int j = i + 1; j < n_obs; ++j) sum_a += a_obs(i, j);
  double sum_p_all = 0.0, sum_p_obs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      sum_p_all += p(i, j);
      if (j < n_obs) sum_p_obs += p(i, j);
    }
  }
  const double denom = sum_p_all - sum_p_obs;
  if (denom < 1e-12) return 0.0;
  const double area_ratio = (static_cast<double>(n) * n - static_cast<double>(n_obs) * n_obs) /
                            (static_cast<double>(n_obs) * n_obs);
  return area_ratio * sum_a / denom;
}

// Full resample of the inverted-L region: every unordered pair touching an
// unobserved node becomes Bernoulli(min(1, gamma * P)), previous samples
// discarded. Pairs are visited in row-major (i<j) order, which fixes the
// rng consumption sequence. The observed block is never touched.
inline void sample_inverted_l(Matrix& a_hat, const Matrix& p, double gamma, int n_obs, Rng& rng) {
  if (gamma < 0.0) throw std::invalid_argument("sample_inverted_l: gamma must be >= 0");
  const int n = a_hat.rows;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i + 1, n_obs); j < n; ++j) {
      const double q = std::min(1.0, gamma * p(i, j));
      const double value = rng.bernoulli(q) ? 1.0 : 0.0;
      a_hat(i, j) = value;
      a_hat(j, i) = value;
    }
  }
}

namespace detail {
struct ForwardPass {
  Tape tape;
  int h = -1;
  int p = -1;
};

inline ForwardPass completer_forward(const CompleterState& state, const GinModel& model) {
  ForwardPass fwd;
  const int a_hat = fwd.tape.constant(state.a_hat);
  GinBinding binding = bind_parameters(fwd.tape, model);
  fwd.h = gin_forward(fwd.tape, model, binding, a_hat);
  fwd.p = decode_probabilities(fwd.tape, fwd.h);
  return fwd;
}
}  // namespace detail

// One iteration: encode, decode, loss on the observed block, backward, Adam
// step; then, once past warmup and on the sampling schedule, rescale and
// resample the inverted-L region with this epoch's probabilities.
inline double train_epoch(CompleterState& state, const CompleterConfig& cfg, Rng& rng) {
  Tape tape;
  GinBinding binding = bind_parameters(tape, state.model);
  const int a_hat_node = tape.constant(state.a_hat);
  const int h = gin_forward(tape, state.model, binding, a_hat_node);
  const int p = decode_probabilities(tape, h);
  const int loss = bce_loss_observed(tape, p, state.a_obs);
  const double loss_value = tape.scalar(loss);
  if (!std::isfinite(loss_value))
    throw std::runtime_error("train_epoch: non-finite loss at epoch " + std::to_string(state.epoch));
  tape.backward(loss);

  std::vector<const Matrix*> grads;
  for (const auto& ids : binding.layers) {
    grads.push_back(&tape.grad(ids.epsilon));
    grads.push_back(&tape.grad(ids.w1));
    grads.push_back(&tape.grad(ids.b1));
    grads.push_back(&tape.grad(ids.w2));
    grads.push_back(&tape.grad(ids.b2));
  }
  adam_step(state.model.parameters(), grads, state.opt, cfg.lr);

  if (state.epoch >= cfg.warmup && (state.epoch - cfg.warmup) % cfg.sample_interval == 0) {
    const int n = state.a_hat.rows;
    const double gamma = compute_gamma(tape.value(p), state.a_obs, n, state.n_obs);
    state.gamma_trace.push_back(gamma);
    sample_inverted_l(state.a_hat, tape.value(p), gamma, state.n_obs, rng);
  }

  ++state.epoch;
  state.loss_trace.push_back(loss_value);
  return loss_value;
}

// Runs the configured number of epochs and returns the final probability
// matrix (one more forward pass with the trained parameters), the final
// sampled adjacency and the traces.
inline CompletionResult complete(const PartialGraph& pg, const CompleterConfig& cfg, Rng& rng) {
  CompleterState state = init_state(pg, cfg, rng);
  for (int e = 0; e < cfg.epochs; ++e) train_epoch(state, cfg, rng);
  detail::ForwardPass fwd = detail::completer_forward(state, state.model);
  CompletionResult result;
  result.p_final = fwd.tape.value(fwd.p);
  result.a_sampled = state.a_hat;
  result.loss_trace = std::move(state.loss_trace);
  result.gamma_trace = std::move(state.gamma_trace);
  return result;
}

inline CompletionResult complete(const PartialGraph& pg, const CompleterConfig& cfg) {
  Rng rng(cfg.seed);
  return complete(pg, cfg, rng);
}

}  // namespace netfill
