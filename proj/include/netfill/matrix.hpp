#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netfill {

// Dense row-major matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {
    if (r < 0 || c < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  double* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }

  bool same_shape(const Matrix& other) const { return rows == other.rows && cols == other.cols; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline bool all_finite(const Matrix& m) {
  for (const double v : m.data)
    if (!std::isfinite(v)) return false;
  return true;
}

inline bool is_identity(const Matrix& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

inline void check_multiplicable(const Matrix& a, const Matrix& b, int a_inner, int b_inner,
                                const char* what) {
  if (a_inner != b_inner)
    throw std::invalid_argument(std::string(what) + ": inner dimensions " +
                                std::to_string(a_inner) + " and " + std::to_string(b_inner) +
                                " do not match");
  (void)a;
  (void)b;
}

// out = a * b. The zero-skip on the inner loop makes products against 0/1
// adjacency matrices cost O(m * cols) instead of O(n^2 * cols).
inline Matrix matmul(const Matrix& a, const Matrix& b) {
  check_multiplicable(a, b, a.cols, b.rows, "matmul");
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      for (int j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

// out = a * b^T
inline Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  check_multiplicable(a, b, a.cols, b.cols, "matmul_nt");
  Matrix out(a.rows, b.rows);
  for (int i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int j = 0; j < b.rows; ++j) {
      const double* brow = b.row(j);
      double acc = 0.0;
      for (int k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      orow[j] = acc;
    }
  }
  return out;
}

// out = a^T * b
inline Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  check_multiplicable(a, b, a.rows, b.rows, "matmul_tn");
  Matrix out(a.cols, b.cols);
  for (int k = 0; k < a.rows; ++k) {
    const double* arow = a.row(k);
    const double* brow = b.row(k);
    for (int i = 0; i < a.cols; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* orow = out.row(i);
      for (int j = 0; j < b.cols; ++j) orow[j] += aki * brow[j];
    }
  }
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  return out;
}

inline void add_inplace(Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("add_inplace: shape mismatch");
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
}

}  // namespace netfill
