#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "netfill/matrix.hpp"

namespace netfill {

// Alignment instance: both matrices share the seed correspondence on indices
// < n_obs; only the unobserved block may be permuted. a_pred is typically the
// 0/1 predicted adjacency but any symmetric score matrix (edge probabilities)
// works with the same objective.
struct SeededMatchProblem {
  Matrix a_true;
  Matrix a_pred;
  int n_obs = 0;

  int n() const { return a_true.rows; }
  int n_miss() const { return a_true.rows - n_obs; }

  void validate() const {
    if (a_true.rows != a_true.cols || a_pred.rows != a_pred.cols)
      throw std::invalid_argument("SeededMatchProblem: matrices must be square");
    if (a_true.rows != a_pred.rows)
      throw std::invalid_argument("SeededMatchProblem: size mismatch");
    if (n_obs < 0 || n_obs >= a_true.rows)
      throw std::invalid_argument("SeededMatchProblem: need 0 <= n_obs < n");
    for (int i = 0; i < a_true.rows; ++i) {
      if (a_true(i, i) != 0.0 || a_pred(i, i) != 0.0)
        throw std::invalid_argument("SeededMatchProblem: nonzero diagonal");
      for (int j = i + 1; j < a_true.cols; ++j)
        if (a_true(i, j) != a_true(j, i) || a_pred(i, j) != a_pred(j, i))
          throw std::invalid_argument("SeededMatchProblem: matrices must be symmetric");
    }
  }
};

// perm[t] = truth slot (a global index in [n_obs, n)) assigned to predicted
// unobserved node n_obs + t.
struct MatchResult {
  std::vector<int> perm;
  double objective = 0.0;
  int iterations = 0;
  // Relaxed objective per Frank-Wolfe iteration (minimization form); exact
  // line search makes it non-increasing.
  std::vector<double> relaxation_trace;
};

inline void check_perm(const std::vector<int>& perm, int n, int n_obs) {
  if (static_cast<int>(perm.size()) != n - n_obs)
    throw std::invalid_argument("perm: wrong length");
  std::vector<char> seen(static_cast<std::size_t>(n - n_obs), 0);
  for (const int slot : perm) {
    if (slot < n_obs || slot >= n) throw std::invalid_argument("perm: slot out of range");
    if (seen[static_cast<std::size_t>(slot - n_obs)]) throw std::invalid_argument("perm: not a bijection");
    seen[static_cast<std::size_t>(slot - n_obs)] = 1;
  }
}

// Reorders rows/columns >= n_obs of p by perm; the observed block and all
// observed-observed entries are untouched.
inline Matrix apply_alignment(const Matrix& p, const std::vector<int>& perm) {
  const int n = p.rows;
  const int n_obs = n - static_cast<int>(perm.size());
  if (p.rows != p.cols) throw std::invalid_argument("apply_alignment: p must be square");
  check_perm(perm, n, n_obs);
  Matrix out(n, n);
  for (int i = 0; i < n_obs; ++i)
    for (int j = 0; j < n_obs; ++j) out(i, j) = p(i, j);
  for (int t = 0; t < n - n_obs; ++t) {
    const int slot = perm[static_cast<std::size_t>(t)];
    for (int i = 0; i < n_obs; ++i) {
      out(i, slot) = p(i, n_obs + t);
      out(slot, i) = p(n_obs + t, i);
    }
    for (int u = 0; u < n - n_obs; ++u)
      out(slot, perm[static_cast<std::size_t>(u)]) = p(n_obs + t, n_obs + u);
  }
  return out;
}

// ||A - P Ahat P^T||_F^2 with P = identity on seeds extended by perm.
inline double qap_objective(const SeededMatchProblem& prob, const std::vector<int>& perm) {
  check_perm(perm, prob.n(), prob.n_obs);
  const Matrix aligned = apply_alignment(prob.a_pred, perm);
  double acc = 0.0;
  for (std::size_t i = 0; i < aligned.data.size(); ++i) {
    const double d = prob.a_true.data[i] - aligned.data[i];
    acc += d * d;
  }
  return acc;
}

// Exact minimum-cost assignment on a square cost matrix via shortest
// augmenting paths (Jonker-Volgenant), O(k^3). Rows are processed in index
// order, so ties resolve deterministically. Returns row -> column.
inline std::vector<int> linear_assignment(const Matrix& cost) {
  if (cost.rows != cost.cols) throw std::invalid_argument("linear_assignment: cost must be square");
  if (!all_finite(cost)) throw std::invalid_argument("linear_assignment: costs must be finite");
  const int n = cost.rows;
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> rowsol(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (match[static_cast<std::size_t>(j)] > 0) rowsol[static_cast<std::size_t>(match[static_cast<std::size_t>(j)]) - 1] = j - 1;
  return rowsol;
}

// Exhaustive search over all n_miss! block permutations; ties resolve to the
// lexicographically smallest permutation. Guarded at n_miss <= 9.
inline MatchResult brute_force_align(const SeededMatchProblem& prob) {
  prob.validate();
  const int n_miss = prob.n_miss();
  if (n_miss < 1) throw std::invalid_argument("brute_force_align: nothing to align");
  if (n_miss > 9)
    throw std::invalid_argument("brute_force_align: n_miss = " + std::to_string(n_miss) +
                                " exceeds the factorial guard (9)");
  std::vector<int> block(static_cast<std::size_t>(n_miss));
  std::iota(block.begin(), block.end(), 0);
  std::vector<int> perm(static_cast<std::size_t>(n_miss));
  MatchResult best;
  best.objective = std::numeric_limits<double>::infinity();
  long long count = 0;
  do {
    for (int t = 0; t < n_miss; ++t) perm[static_cast<std::size_t>(t)] = prob.n_obs + block[static_cast<std::size_t>(t)];
    const double obj = qap_objective(prob, perm);
    ++count;
    if (obj < best.objective) {
      best.objective = obj;
      best.perm = perm;
    }
  } while (std::next_permutation(block.begin(), block.end()));
  best.iterations = static_cast<int>(count);
  return best;
}

namespace detail {
inline Matrix block(const Matrix& m, int r0, int r1, int c0, int c1) {
  Matrix out(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) out(i - r0, j - c0) = m(i, j);
  return out;
}

inline double dot(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) acc += a.data[i] * b.data[i];
  return acc;
}
}  // namespace detail

// Seeded graph matching via Frank-Wolfe over the Birkhoff polytope of the
// n_miss x n_miss block (FAQ style). The minimization of
// ||A - P Ahat P^T||_F^2 over permutations is equivalent to maximizing
//   g(Q) = 4 <Q, A_mo Ahat_mo^T> + 2 tr(A_mm Q Ahat_mm Q^T),
// which keeps the seed-nonseed cross terms as the linear part. Each
// iteration takes the best assignment vertex of the gradient, then the
// closed-form exact line-search step; the final doubly stochastic block is
// projected back to a permutation by one more assignment solve.
inline MatchResult sgm_align(const SeededMatchProblem& prob, int max_iters = 50,
                             double tol = 1e-6) {
  prob.validate();
  const int n = prob.n();
  const int n_obs = prob.n_obs;
  const int n_miss = prob.n_miss();
  if (n_miss < 1) throw std::invalid_argument("sgm_align: nothing to align");
  if (max_iters < 1) throw std::invalid_argument("sgm_align: max_iters must be >= 1");

  const Matrix a_mo = detail::block(prob.a_true, n_obs, n, 0, n_obs);
  const Matrix a_mm = detail::block(prob.a_true, n_obs, n, n_obs, n);
  const Matrix b_mo = detail::block(prob.a_pred, n_obs, n, 0, n_obs);
  const Matrix b_mm = detail::block(prob.a_pred, n_obs, n, n_obs, n);
  const Matrix k = matmul_nt(a_mo, b_mo);  // seed-nonseed cross terms

  Matrix q(n_miss, n_miss, 1.0 / n_miss);  // barycenter start

  const auto trace_objective = [&](const Matrix& qq) {
    const Matrix aqb = matmul(matmul(a_mm, qq), b_mm);
    return 4.0 * detail::dot(qq, k) + 2.0 * detail::dot(aqb, qq);
  };

  MatchResult result;
  double g_cur = trace_objective(q);
  result.relaxation_trace.push_back(-g_cur);
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    // gradient of g at Q
    Matrix grad = matmul(matmul(a_mm, q), b_mm);
    for (double& v : grad.data) v *= 4.0;
    for (std::size_t i = 0; i < grad.data.size(); ++i) grad.data[i] += 4.0 * k.data[i];

    Matrix neg_grad = grad;
    for (double& v : neg_grad.data) v = -v;
    const std::vector<int> vertex = linear_assignment(neg_grad);

    Matrix d = q;
    for (double& v : d.data) v = -v;
    for (int s = 0; s < n_miss; ++s) d(s, vertex[static_cast<std::size_t>(s)]) += 1.0;

    // g(Q + alpha D) = g(Q) + b alpha + a alpha^2
    const Matrix adb = matmul(matmul(a_mm, d), b_mm);
    const double a_coef = 2.0 * detail::dot(adb, d);
    const double b_coef = 4.0 * detail::dot(d, k) + 4.0 * detail::dot(adb, q);

    double alpha;
    if (a_coef < 0.0)
      alpha = std::clamp(-b_coef / (2.0 * a_coef), 0.0, 1.0);
    else
      alpha = (a_coef + b_coef > 0.0) ? 1.0 : 0.0;
    if (alpha == 0.0) break;

    for (std::size_t i = 0; i < q.data.size(); ++i) q.data[i] += alpha * d.data[i];
    const double g_next = trace_objective(q);
    result.relaxation_trace.push_back(-g_next);
    const double rel_change = std::fabs(g_next - g_cur) / std::max(1.0, std::fabs(g_cur));
    g_cur = g_next;
    if (rel_change < tol) {
      ++iter;
      break;
    }
  }
  result.iterations = iter;

  // project the doubly stochastic block to a permutation
  Matrix neg_q = q;
  for (double& v : neg_q.data) v = -v;
  const std::vector<int> rowsol = linear_assignment(neg_q);
  result.perm.assign(static_cast<std::size_t>(n_miss), -1);
  for (int s = 0; s < n_miss; ++s) result.perm[static_cast<std::size_t>(rowsol[static_cast<std::size_t>(s)])] = n_obs + s;
  result.objective = qap_objective(prob, result.perm);
  return result;
}

}  // namespace netfill
