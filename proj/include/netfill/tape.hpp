#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netfill/matrix.hpp"

namespace netfill {

// Reverse-mode tape over matrix-valued primitives. Each recorded node keeps
// its value; backward() replays the record in reverse, accumulating
// vector-Jacobian products into per-node gradient matrices. A tape is built
// fresh per forward pass and owned by a single training run.
class Tape {
 public:
  static constexpr double kProbClampLo = 1e-7;
  static constexpr double kProbClampHi = 1.0 - 1e-7;

  // Learnable leaf; gradient is available after backward().
  int leaf(Matrix v) { return push(Op::kLeaf, -1, -1, std::move(v)); }

  // Non-learnable input (adjacency, features).
  int constant(Matrix v) { return push(Op::kConst, -1, -1, std::move(v)); }

  int matmul(int a, int b) {
    return push(Op::kMatMul, a, b, netfill::matmul(value(a), value(b)));
  }

  int add(int a, int b) {
    const Matrix& va = value(a);
    const Matrix& vb = value(b);
    if (!va.same_shape(vb)) throw std::invalid_argument("Tape::add: shape mismatch");
    Matrix out = va;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += vb.data[i];
    return push(Op::kAdd, a, b, std::move(out));
  }

  // out(i,j) = a(i,j) + bias(0,j)
  int add_bias_row(int a, int bias) {
    const Matrix& va = value(a);
    const Matrix& vb = value(bias);
    if (vb.rows != 1 || vb.cols != va.cols)
      throw std::invalid_argument("Tape::add_bias_row: bias must be 1 x cols");
    Matrix out = va;
    for (int i = 0; i < out.rows; ++i) {
      double* orow = out.row(i);
      for (int j = 0; j < out.cols; ++j) orow[j] += vb.data[static_cast<std::size_t>(j)];
    }
    return push(Op::kAddBiasRow, a, bias, std::move(out));
  }

  int relu(int a) {
    Matrix out = value(a);
    for (double& v : out.data) v = v > 0.0 ? v : 0.0;
    return push(Op::kRelu, a, -1, std::move(out));
  }

  // out = (1 + s) * a, with s a 1x1 node.
  int scale_shift(int a, int s) {
    const double sv = scalar(s);
    Matrix out = value(a);
    for (double& v : out.data) v *= 1.0 + sv;
    return push(Op::kScaleShift, a, s, std::move(out));
  }

  // out = a + (1 + s) * I. Equivalent to scale_shift against identity
  // features without materializing the identity product.
  int diag_shift(int a, int s) {
    const Matrix& va = value(a);
    if (va.rows != va.cols) throw std::invalid_argument("Tape::diag_shift: matrix must be square");
    const double sv = scalar(s);
    Matrix out = va;
    for (int i = 0; i < out.rows; ++i) out(i, i) += 1.0 + sv;
    return push(Op::kDiagShift, a, s, std::move(out));
  }

  // out = h * h^T, computed once per unordered pair and mirrored, so the
  // result is bitwise symmetric.
  int gram(int h) {
    const Matrix& vh = value(h);
    Matrix out(vh.rows, vh.rows);
    for (int i = 0; i < vh.rows; ++i) {
      const double* hi = vh.row(i);
      for (int j = i; j < vh.rows; ++j) {
        const double* hj = vh.row(j);
        double acc = 0.0;
        for (int k = 0; k < vh.cols; ++k) acc += hi[k] * hj[k];
        out(i, j) = acc;
        out(j, i) = acc;
      }
    }
    return push(Op::kGram, h, -1, std::move(out));
  }

  int sigmoid(int a) {
    Matrix out = value(a);
    for (double& v : out.data) v = 1.0 / (1.0 + std::exp(-v));
    return push(Op::kSigmoid, a, -1, std::move(out));
  }

  int sum(int a) {
    double acc = 0.0;
    for (const double v : value(a).data) acc += v;
    Matrix out(1, 1);
    out.data[0] = acc;
    return push(Op::kSum, a, -1, std::move(out));
  }

  // Mean binary cross-entropy over unordered observed pairs {(i,j): i<j<n_obs}
  // of p against the 0/1 matrix a_obs, with probabilities clamped before the
  // logs. Entries of p outside the observed block are never read.
  int bce_observed(int p, Matrix a_obs) {
    const Matrix& vp = value(p);
    const int n_obs = a_obs.rows;
    if (a_obs.cols != n_obs) throw std::invalid_argument("Tape::bce_observed: a_obs must be square");
    if (n_obs > vp.rows || n_obs > vp.cols)
      throw std::invalid_argument("Tape::bce_observed: observed block exceeds p");
    if (n_obs < 2) throw std::invalid_argument("Tape::bce_observed: need n_obs >= 2");
    const double npairs = static_cast<double>(n_obs) * (n_obs - 1) / 2.0;
    double acc = 0.0;
    for (int i = 0; i < n_obs; ++i) {
      for (int j = i + 1; j < n_obs; ++j) {
        const double pc = clamp_prob(vp(i, j));
        const double a = a_obs(i, j);
        acc += a * std::log(pc) + (1.0 - a) * std::log(1.0 - pc);
      }
    }
    Matrix out(1, 1);
    out.data[0] = -acc / npairs;
    const int id = push(Op::kBceObserved, p, -1, std::move(out));
    nodes_[static_cast<std::size_t>(id)].aux = std::move(a_obs);
    return id;
  }

  const Matrix& value(int id) const {
    check_id(id);
    return values_[static_cast<std::size_t>(id)];
  }

  double scalar(int id) const {
    const Matrix& v = value(id);
    if (v.rows != 1 || v.cols != 1) throw std::invalid_argument("Tape::scalar: node is not 1x1");
    return v.data[0];
  }

  // Reverse sweep from a 1x1 loss node. Gradients accumulate for every node;
  // read them for leaves via grad().
  void backward(int loss) {
    const Matrix& lv = value(loss);
    if (lv.rows != 1 || lv.cols != 1) throw std::invalid_argument("Tape::backward: loss must be 1x1");
    grads_.assign(values_.size(), Matrix());
    for (std::size_t i = 0; i < values_.size(); ++i)
      grads_[i] = Matrix(values_[i].rows, values_[i].cols);
    grads_[static_cast<std::size_t>(loss)].data[0] = 1.0;

    for (int id = loss; id >= 0; --id) {
      const Node& node = nodes_[static_cast<std::size_t>(id)];
      const Matrix& g = grads_[static_cast<std::size_t>(id)];
      switch (node.op) {
        case Op::kLeaf:
        case Op::kConst:
          break;
        case Op::kMatMul:
          add_inplace(grads_[static_cast<std::size_t>(node.a)], matmul_nt(g, value(node.b)));
          add_inplace(grads_[static_cast<std::size_t>(node.b)], matmul_tn(value(node.a), g));
          break;
        case Op::kAdd:
          add_inplace(grads_[static_cast<std::size_t>(node.a)], g);
          add_inplace(grads_[static_cast<std::size_t>(node.b)], g);
          break;
        case Op::kAddBiasRow: {
          add_inplace(grads_[static_cast<std::size_t>(node.a)], g);
          Matrix& gb = grads_[static_cast<std::size_t>(node.b)];
          for (int i = 0; i < g.rows; ++i) {
            const double* grow = g.row(i);
            for (int j = 0; j < g.cols; ++j) gb.data[static_cast<std::size_t>(j)] += grow[j];
          }
          break;
        }
        case Op::kRelu: {
          Matrix& ga = grads_[static_cast<std::size_t>(node.a)];
          const Matrix& va = value(node.a);
          for (std::size_t i = 0; i < ga.data.size(); ++i)
            if (va.data[i] > 0.0) ga.data[i] += g.data[i];
          break;
        }
        case Op::kScaleShift: {
          const double sv = scalar(node.b);
          Matrix& ga = grads_[static_cast<std::size_t>(node.a)];
          const Matrix& va = value(node.a);
          double gs = 0.0;
          for (std::size_t i = 0; i < ga.data.size(); ++i) {
            ga.data[i] += (1.0 + sv) * g.data[i];
            gs += g.data[i] * va.data[i];
          }
          grads_[static_cast<std::size_t>(node.b)].data[0] += gs;
          break;
        }
        case Op::kDiagShift: {
          add_inplace(grads_[static_cast<std::size_t>(node.a)], g);
          double gs = 0.0;
          for (int i = 0; i < g.rows; ++i) gs += g(i, i);
          grads_[static_cast<std::size_t>(node.b)].data[0] += gs;
          break;
        }
        case Op::kGram: {
          // d/dh of h h^T under upstream g is (g + g^T) h.
          Matrix gsym = g;
          for (int i = 0; i < g.rows; ++i)
            for (int j = 0; j < g.cols; ++j) gsym(i, j) += g(j, i);
          add_inplace(grads_[static_cast<std::size_t>(node.a)], netfill::matmul(gsym, value(node.a)));
          break;
        }
        case Op::kSigmoid: {
          Matrix& ga = grads_[static_cast<std::size_t>(node.a)];
          const Matrix& out = values_[static_cast<std::size_t>(id)];
          for (std::size_t i = 0; i < ga.data.size(); ++i)
            ga.data[i] += g.data[i] * out.data[i] * (1.0 - out.data[i]);
          break;
        }
        case Op::kSum: {
          Matrix& ga = grads_[static_cast<std::size_t>(node.a)];
          const double gv = g.data[0];
          for (double& v : ga.data) v += gv;
          break;
        }
        case Op::kBceObserved: {
          const double gv = g.data[0];
          const Matrix& vp = value(node.a);
          const Matrix& a_obs = node.aux;
          const int n_obs = a_obs.rows;
          const double npairs = static_cast<double>(n_obs) * (n_obs - 1) / 2.0;
          Matrix& gp = grads_[static_cast<std::size_t>(node.a)];
          for (int i = 0; i < n_obs; ++i) {
            for (int j = i + 1; j < n_obs; ++j) {
              const double pv = vp(i, j);
              if (pv <= kProbClampLo || pv >= kProbClampHi) continue;  // clamp has zero slope
              const double a = a_obs(i, j);
              gp(i, j) += gv * (-(a / pv) + (1.0 - a) / (1.0 - pv)) / npairs;
            }
          }
          break;
        }
      }
    }
  }

  const Matrix& grad(int id) const {
    check_id(id);
    if (grads_.size() != values_.size())
      throw std::logic_error("Tape::grad: backward() has not run");
    return grads_[static_cast<std::size_t>(id)];
  }

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  enum class Op {
    kLeaf,
    kConst,
    kMatMul,
    kAdd,
    kAddBiasRow,
    kRelu,
    kScaleShift,
    kDiagShift,
    kGram,
    kSigmoid,
    kSum,
    kBceObserved,
  };

  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    Matrix aux;
  };

  static double clamp_prob(double p) {
    if (p < kProbClampLo) return kProbClampLo;
    if (p > kProbClampHi) return kProbClampHi;
    return p;
  }

  int push(Op op, int a, int b, Matrix value) {
    nodes_.push_back(Node{op, a, b, Matrix()});
    values_.push_back(std::move(value));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void check_id(int id) const {
    if (id < 0 || id >= static_cast<int>(nodes_.size()))
      throw std::out_of_range("Tape: node id " + std::to_string(id));
  }

  std::vector<Node> nodes_;
  std::vector<Matrix> values_;
  std::vector<Matrix> grads_;
};

}  // namespace netfill
