#pragma once

// Test-only reference implementations, deliberately written as plain loops
// independent of the library's computation paths.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "netfill/gin.hpp"
#include "netfill/graph.hpp"
#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"
#include "netfill/tape.hpp"

namespace netfill::testing {

inline Graph er_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.add_edge(i, j);
  return g;
}

inline Matrix random_matrix(int rows, int cols, Rng& rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.data) v = (2.0 * rng.uniform() - 1.0) * scale;
  return m;
}

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

// Per-node GIN layer: aggregate neighbors with an explicit scan, then apply
// the two affine maps row by row.
inline Matrix naive_gin_layer(const GinLayer& layer, const Matrix& h_prev, const Matrix& a) {
  const int n = h_prev.rows;
  const double eps = layer.epsilon(0, 0);
  Matrix agg(n, h_prev.cols);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < h_prev.cols; ++c) agg(v, c) = (1.0 + eps) * h_prev(v, c);
    for (int u = 0; u < n; ++u) {
      if (a(v, u) == 0.0) continue;
      for (int c = 0; c < h_prev.cols; ++c) agg(v, c) += h_prev(u, c);
    }
  }
  const int d_out = layer.w1.cols;
  Matrix out(n, d_out);
  for (int v = 0; v < n; ++v) {
    std::vector<double> hidden(static_cast<std::size_t>(d_out));
    for (int c = 0; c < d_out; ++c) {
      double acc = layer.b1(0, c);
      for (int k = 0; k < agg.cols; ++k) acc += agg(v, k) * layer.w1(k, c);
      hidden[static_cast<std::size_t>(c)] = std::max(0.0, acc);
    }
    for (int c = 0; c < d_out; ++c) {
      double acc = layer.b2(0, c);
      for (int k = 0; k < d_out; ++k) acc += hidden[static_cast<std::size_t>(k)] * layer.w2(k, c);
      out(v, c) = acc;
    }
  }
  return out;
}

inline Matrix naive_gin_forward(const GinModel& model, const Matrix& a) {
  Matrix h = Matrix::identity(a.rows);
  for (const auto& layer : model.layers) h = naive_gin_layer(layer, h, a);
  return h;
}

// Loss of the full encode/decode pipeline as a plain function of the model,
// used for finite differencing.
inline double pipeline_loss(const GinModel& model, const Matrix& a_hat, const Matrix& a_obs) {
  Tape tape;
  const GinBinding binding = bind_parameters(tape, model);
  const int a = tape.constant(a_hat);
  const int h = gin_forward(tape, model, binding, a);
  const int p = decode_probabilities(tape, h);
  return tape.scalar(bce_loss_observed(tape, p, a_obs));
}

// Max relative error between reverse-mode gradients and central finite
// differences over every parameter coordinate.
inline double gradient_check(GinModel& model, const Matrix& a_hat, const Matrix& a_obs,
                             double step = 1e-4) {
  Tape tape;
  const GinBinding binding = bind_parameters(tape, model);
  const int a = tape.constant(a_hat);
  const int h = gin_forward(tape, model, binding, a);
  const int p = decode_probabilities(tape, h);
  const int loss = bce_loss_observed(tape, p, a_obs);
  tape.backward(loss);
  std::vector<const Matrix*> grads;
  for (const auto& ids : binding.layers) {
    grads.push_back(&tape.grad(ids.epsilon));
    grads.push_back(&tape.grad(ids.w1));
    grads.push_back(&tape.grad(ids.b1));
    grads.push_back(&tape.grad(ids.w2));
    grads.push_back(&tape.grad(ids.b2));
  }

  double worst = 0.0;
  const std::vector<Matrix*> params = model.parameters();
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Matrix& param = *params[pi];
    for (std::size_t k = 0; k < param.data.size(); ++k) {
      const double saved = param.data[k];
      param.data[k] = saved + step;
      const double up = pipeline_loss(model, a_hat, a_obs);
      param.data[k] = saved - step;
      const double down = pipeline_loss(model, a_hat, a_obs);
      param.data[k] = saved;
      const double fd = (up - down) / (2.0 * step);
      const double rev = grads[pi]->data[k];
      const double denom = std::max({1e-6, std::fabs(fd), std::fabs(rev)});
      worst = std::max(worst, std::fabs(fd - rev) / denom);
    }
  }
  return worst;
}

// Distances of the pipeline's nonsmooth points from the evaluation point:
// smallest |relu pre-activation| and smallest gap between an observed-pair
// probability and the loss clamp bounds. Finite differencing is only a valid
// derivative oracle when both are clear of the step size.
struct SmoothnessMargins {
  double relu = std::numeric_limits<double>::infinity();
  double clamp = std::numeric_limits<double>::infinity();
};

inline SmoothnessMargins instance_margins(const GinModel& model, const Matrix& a, int n_obs) {
  SmoothnessMargins margins;
  const int n = a.rows;
  Matrix h = Matrix::identity(n);
  for (const auto& layer : model.layers) {
    const double eps = layer.epsilon(0, 0);
    Matrix agg(n, h.cols);
    for (int v = 0; v < n; ++v) {
      for (int c = 0; c < h.cols; ++c) agg(v, c) = (1.0 + eps) * h(v, c);
      for (int u = 0; u < n; ++u) {
        if (a(v, u) == 0.0) continue;
        for (int c = 0; c < h.cols; ++c) agg(v, c) += h(u, c);
      }
    }
    const int d_out = layer.w1.cols;
    Matrix out(n, d_out);
    for (int v = 0; v < n; ++v) {
      std::vector<double> hidden(static_cast<std::size_t>(d_out));
      for (int c = 0; c < d_out; ++c) {
        double z = layer.b1(0, c);
        for (int k = 0; k < agg.cols; ++k) z += agg(v, k) * layer.w1(k, c);
        margins.relu = std::min(margins.relu, std::fabs(z));
        hidden[static_cast<std::size_t>(c)] = std::max(0.0, z);
      }
      for (int c = 0; c < d_out; ++c) {
        double z = layer.b2(0, c);
        for (int k = 0; k < d_out; ++k) z += hidden[static_cast<std::size_t>(k)] * layer.w2(k, c);
        out(v, c) = z;
      }
    }
    h = std::move(out);
  }
  for (int i = 0; i < n_obs; ++i) {
    for (int j = i + 1; j < n_obs; ++j) {
      double dot = 0.0;
      for (int k = 0; k < h.cols; ++k) dot += h(i, k) * h(j, k);
      const double p = 1.0 / (1.0 + std::exp(-dot));
      margins.clamp = std::min(margins.clamp, std::min(p - 1e-7, (1.0 - 1e-7) - p));
    }
  }
  return margins;
}

// O(|pos| * |neg|) pairwise AUC.
inline double auc_quadratic(const std::vector<double>& pos, const std::vector<double>& neg) {
  double wins = 0.0;
  for (const double p : pos)
    for (const double q : neg) {
      if (p > q)
        wins += 1.0;
      else if (p == q)
        wins += 0.5;
    }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

// Precision-curve AP: walk distinct score values descending, counting tied
// negatives ahead of tied positives.
inline double ap_curve_oracle(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::map<double, std::pair<int, int>, std::greater<double>> by_score;
  for (const double s : pos) by_score[s].first++;
  for (const double s : neg) by_score[s].second++;
  double sum = 0.0;
  int rank = 0, hits = 0;
  for (const auto& [score, counts] : by_score) {
    rank += counts.second;  // tied negatives first
    for (int t = 0; t < counts.first; ++t) {
      ++rank;
      ++hits;
      sum += static_cast<double>(hits) / rank;
    }
  }
  return sum / static_cast<double>(pos.size());
}

// Average-local clustering coefficient by explicit triangle enumeration.
inline double cc_triangle_oracle(const Graph& g) {
  double total = 0.0;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> nb;
    for (int u = 0; u < g.n(); ++u)
      if (u != v && g.has_edge(v, u)) nb.push_back(u);
    if (nb.size() < 2) continue;
    int tri = 0;
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y)
        if (g.has_edge(nb[x], nb[y])) ++tri;
    total += 2.0 * tri / (static_cast<double>(nb.size()) * (static_cast<double>(nb.size()) - 1.0));
  }
  return total / g.n();
}

// Spearman rank correlation with tie-averaged ranks.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + 1 + j);
      for (std::size_t t = i; t < j; ++t) r[order[t]] = avg;
      i = j;
    }
    return r;
  };
  const std::vector<double> rx = ranks(xs), ry = ranks(ys);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= static_cast<double>(rx.size());
  my /= static_cast<double>(ry.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace netfill::testing
