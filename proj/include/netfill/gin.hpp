#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"
#include "netfill/tape.hpp"

namespace netfill {

// One GIN layer: h' = MLP((1 + epsilon) h + A h) with MLP = affine -> relu ->
// affine. The MLP's internal width equals the layer's output width.
struct GinLayer {
  Matrix epsilon;  // 1x1 learnable scalar
  Matrix w1, b1;   // d_in x d_out, 1 x d_out
  Matrix w2, b2;   // d_out x d_out, 1 x d_out
};

struct GinModel {
  std::vector<int> dims;  // [input_dim, width..., embed_dim]
  std::vector<GinLayer> layers;

  int input_dim() const { return dims.front(); }
  int embed_dim() const { return dims.back(); }

  // Parameter traversal order (layer by layer: epsilon, w1, b1, w2, b2) is
  // the contract for optimizer state and checkpoints.
  std::vector<Matrix*> parameters() {
    std::vector<Matrix*> out;
    for (auto& layer : layers) {
      out.push_back(&layer.epsilon);
      out.push_back(&layer.w1);
      out.push_back(&layer.b1);
      out.push_back(&layer.w2);
      out.push_back(&layer.b2);
    }
    return out;
  }
  std::vector<const Matrix*> parameters() const {
    std::vector<const Matrix*> out;
    for (const auto& layer : layers) {
      out.push_back(&layer.epsilon);
      out.push_back(&layer.w1);
      out.push_back(&layer.b1);
      out.push_back(&layer.w2);
      out.push_back(&layer.b2);
    }
    return out;
  }
};

inline Matrix glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  Matrix m(fan_in, fan_out);
  for (double& v : m.data) v = (2.0 * rng.uniform() - 1.0) * bound;
  return m;
}

// Fresh model: epsilon 0, affine weights Glorot-uniform, biases 0.
inline GinModel init_gin(const std::vector<int>& dims, Rng& rng) {
  if (dims.size() < 2) throw std::invalid_argument("init_gin: need at least [input, embed] dims");
  GinModel model;
  model.dims = dims;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int d_in = dims[l];
    const int d_out = dims[l + 1];
    if (d_in < 1 || d_out < 1) throw std::invalid_argument("init_gin: dims must be positive");
    GinLayer layer;
    layer.epsilon = Matrix(1, 1, 0.0);
    layer.w1 = glorot_uniform(d_in, d_out, rng);
    layer.b1 = Matrix(1, d_out, 0.0);
    layer.w2 = glorot_uniform(d_out, d_out, rng);
    layer.b2 = Matrix(1, d_out, 0.0);
    model.layers.push_back(std::move(layer));
  }
  return model;
}

struct GinLayerNodes {
  int epsilon, w1, b1, w2, b2;
};

struct GinBinding {
  std::vector<GinLayerNodes> layers;
};

// Registers every model parameter as a tape leaf, in parameter order.
inline GinBinding bind_parameters(Tape& tape, const GinModel& model) {
  GinBinding binding;
  for (const auto& layer : model.layers) {
    GinLayerNodes ids{};
    ids.epsilon = tape.leaf(layer.epsilon);
    ids.w1 = tape.leaf(layer.w1);
    ids.b1 = tape.leaf(layer.b1);
    ids.w2 = tape.leaf(layer.w2);
    ids.b2 = tape.leaf(layer.b2);
    binding.layers.push_back(ids);
  }
  return binding;
}

namespace detail {
inline int mlp_forward(Tape& tape, const GinLayerNodes& layer, int agg) {
  const int z1 = tape.add_bias_row(tape.matmul(agg, layer.w1), layer.b1);
  const int z2 = tape.add_bias_row(tape.matmul(tape.relu(z1), layer.w2), layer.b2);
  if (!all_finite(tape.value(z2)))
    throw std::runtime_error("gin layer produced non-finite values");
  return z2;
}
}  // namespace detail

// h' = MLP((1 + epsilon) h_prev + a_hat h_prev); a_hat must be symmetric 0/1
// with zero diagonal.
inline int gin_layer_forward(Tape& tape, const GinLayerNodes& layer, int h_prev, int a_hat) {
  const int agg = tape.add(tape.matmul(a_hat, h_prev), tape.scale_shift(h_prev, layer.epsilon));
  return detail::mlp_forward(tape, layer, agg);
}

// Full encoder for one-hot (identity) features. The first layer's aggregation
// (1 + eps) I + a_hat is formed directly, which is the row-lookup view of the
// identity product.
inline int gin_forward(Tape& tape, const GinModel& model, const GinBinding& binding, int a_hat) {
  if (model.layers.empty()) throw std::invalid_argument("gin_forward: model has no layers");
  const Matrix& a = tape.value(a_hat);
  if (a.rows != a.cols) throw std::invalid_argument("gin_forward: a_hat must be square");
  if (a.rows != model.input_dim())
    throw std::invalid_argument("gin_forward: a_hat size " + std::to_string(a.rows) +
                                " does not match input dim " + std::to_string(model.input_dim()));
  int h = detail::mlp_forward(tape, binding.layers[0],
                              tape.diag_shift(a_hat, binding.layers[0].epsilon));
  for (std::size_t l = 1; l < binding.layers.size(); ++l)
    h = gin_layer_forward(tape, binding.layers[l], h, a_hat);
  return h;
}

// General-features overload: takes an explicit x node, using the fast path
// when x is the identity.
inline int gin_forward(Tape& tape, const GinModel& model, const GinBinding& binding, int a_hat,
                       int x) {
  if (is_identity(tape.value(x))) return gin_forward(tape, model, binding, a_hat);
  if (model.layers.empty()) throw std::invalid_argument("gin_forward: model has no layers");
  int h = x;
  for (std::size_t l = 0; l < binding.layers.size(); ++l)
    h = gin_layer_forward(tape, binding.layers[l], h, a_hat);
  return h;
}

// P = sigmoid(H H^T); symmetric with entries in (0,1). The diagonal is
// computed but ignored by the loss, the scale factor and sampling.
inline int decode_probabilities(Tape& tape, int h) {
  if (!all_finite(tape.value(h))) throw std::runtime_error("decode_probabilities: non-finite input");
  return tape.sigmoid(tape.gram(h));
}

// Tape-free path for untrained embeddings; same kernel as the tape op.
inline Matrix decode_probabilities(const Matrix& h) {
  Tape tape;
  return tape.value(decode_probabilities(tape, tape.constant(h)));
}

inline int bce_loss_observed(Tape& tape, int p, Matrix a_obs) {
  return tape.bce_observed(p, std::move(a_obs));
}

// Adam with bias correction; state order mirrors GinModel::parameters().
struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long long t = 0;
  std::vector<Matrix> m, v;
};

inline void adam_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
                      AdamState& state, double lr) {
  if (params.size() != grads.size()) throw std::invalid_argument("adam_step: param/grad mismatch");
  if (state.m.empty()) {
    for (const Matrix* p : params) {
      state.m.emplace_back(p->rows, p->cols);
      state.v.emplace_back(p->rows, p->cols);
    }
  }
  if (state.m.size() != params.size()) throw std::invalid_argument("adam_step: stale state");
  ++state.t;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix& p = *params[i];
    const Matrix& g = *grads[i];
    if (!p.same_shape(g)) throw std::invalid_argument("adam_step: grad shape mismatch");
    Matrix& m = state.m[i];
    Matrix& v = state.v[i];
    for (std::size_t k = 0; k < p.data.size(); ++k) {
      m.data[k] = state.beta1 * m.data[k] + (1.0 - state.beta1) * g.data[k];
      v.data[k] = state.beta2 * v.data[k] + (1.0 - state.beta2) * g.data[k] * g.data[k];
      const double mhat = m.data[k] / bc1;
      const double vhat = v.data[k] / bc2;
      p.data[k] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
  }
}

}  // namespace netfill
