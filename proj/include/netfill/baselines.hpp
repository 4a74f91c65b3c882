#pragma once

#include <cmath>
#include <string>

#include "netfill/gin.hpp"
#include "netfill/graph.hpp"
#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"

namespace netfill {

struct BaselineOutput {
  Matrix p;  // N x N symmetric scores in [0,1]
  std::string method;
  bool degenerate = false;  // set when every score is zero
};

// Preferential-attachment completion: observed-observed pairs score
// D(x) * D(y), observed-unobserved pairs score the observed endpoint's
// degree, unobserved-unobserved pairs score 0 (both degrees unknown).
// All scores are divided by the global maximum.
inline BaselineOutput pa_complete(const PartialGraph& pg) {
  const int n = pg.total_n();
  const int n_obs = pg.n_obs;
  BaselineOutput out;
  out.method = "pa";
  out.p = Matrix(n, n);
  double max_score = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double score = 0.0;
      if (j < n_obs)
        score = static_cast<double>(pg.a_obs.degree(i)) * pg.a_obs.degree(j);
      else if (i < n_obs)
        score = static_cast<double>(pg.a_obs.degree(i));
      out.p(i, j) = score;
      out.p(j, i) = score;
      max_score = std::max(max_score, score);
    }
  }
  if (max_score == 0.0) {
    out.degenerate = true;  // all-isolated observed block
    return out;
  }
  for (double& v : out.p.data) v /= max_score;
  return out;
}

// Ablation: random node embeddings through the same inner-product decoder,
// no training. Entries are N(0, 1/d) so row inner products have unit
// variance, keeping the sigmoid away from saturation.
inline BaselineOutput random_decoder_complete(const PartialGraph& pg, int embed_dim, Rng& rng) {
  if (embed_dim < 1) throw std::invalid_argument("random_decoder_complete: embed_dim must be >= 1");
  const int n = pg.total_n();
  Matrix h(n, embed_dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(embed_dim));
  for (double& v : h.data) v = rng.normal() * scale;
  BaselineOutput out;
  out.method = "random_de";
  out.p = decode_probabilities(h);
  return out;
}

}  // namespace netfill
