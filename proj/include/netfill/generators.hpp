#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netfill/graph.hpp"
#include "netfill/rng.hpp"

namespace netfill {

// Barabasi-Albert preferential attachment grown from an m_attach-node seed
// clique. Every node added after the seed attaches to m_attach distinct
// existing nodes, so the edge count is C(m_attach,2) + (n-m_attach)*m_attach.
inline Graph gen_ba(int n, int m_attach, Rng& rng) {
  if (m_attach < 1 || m_attach >= n) throw std::invalid_argument("gen_ba: need 1 <= m_attach < n");
  Graph g(n);
  for (int i = 0; i < m_attach; ++i)
    for (int j = i + 1; j < m_attach; ++j) g.add_edge(i, j);

  // One entry per edge endpoint; sampling from it is degree-proportional.
  std::vector<int> endpoints;
  endpoints.reserve(static_cast<std::size_t>(n) * m_attach * 2);
  for (const auto& [u, v] : g.edges()) {
    endpoints.push_back(u);
    endpoints.push_back(v);
  }

  std::vector<int> picked;
  for (int v = m_attach; v < n; ++v) {
    picked.clear();
    while (static_cast<int>(picked.size()) < m_attach) {
      int target;
      if (endpoints.empty())
        target = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(v)));
      else
        target = endpoints[rng.uniform_index(endpoints.size())];
      if (std::find(picked.begin(), picked.end(), target) == picked.end())
        picked.push_back(target);
    }
    for (const int u : picked) {
      g.add_edge(v, u);
      endpoints.push_back(v);
      endpoints.push_back(u);
    }
  }
  return g;
}

// Watts-Strogatz: ring lattice with k/2 neighbors per side, then the original
// edge-by-edge scheme that rewires the far endpoint with probability p.
// Edge count stays exactly n*k/2.
inline Graph gen_ws(int n, int k, double p, Rng& rng) {
  if (k < 2 || k % 2 != 0 || k >= n) throw std::invalid_argument("gen_ws: need even k with 2 <= k < n");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_ws: need 0 <= p <= 1");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= k / 2; ++d) g.add_edge(i, (i + d) % n);

  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= k / 2; ++d) {
      const int old = (i + d) % n;
      if (!g.has_edge(i, old)) continue;  // already rewired away by an earlier step
      if (!rng.bernoulli(p)) continue;
      if (g.degree(i) >= n - 1) continue;  // no non-neighbor left
      int w;
      do {
        w = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      } while (w == i || g.has_edge(i, w));
      g.remove_edge(i, old);
      g.add_edge(i, w);
    }
  }
  return g;
}

// Stochastic Kronecker graph on 2^power nodes: pair (i,j) with i<j is an edge
// with probability prod over bit levels of initiator[bit(i)][bit(j)].
inline Graph gen_kronecker(const std::array<std::array<double, 2>, 2>& initiator, int power,
                           Rng& rng) {
  // power 14 is 16384 nodes, the most the dense adjacency comfortably holds
  if (power < 1 || power > 14) throw std::invalid_argument("gen_kronecker: need 1 <= power <= 14");
  for (const auto& row : initiator)
    for (const double v : row)
      if (v < 0.0 || v > 1.0) throw std::invalid_argument("gen_kronecker: initiator entries must be in [0,1]");
  const int n = 1 << power;
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double prob = 1.0;
      for (int level = 0; level < power; ++level)
        prob *= initiator[(i >> level) & 1][(j >> level) & 1];
      if (prob > 0.0 && rng.bernoulli(prob)) g.add_edge(i, j);
    }
  }
  return g;
}

// Undirected forest fire: each new node links a uniform ambassador, then
// recursively burns a geometric number (mean p_fwd/(1-p_fwd)) of each burned
// node's unburned neighbors and links every burned node.
inline Graph gen_forest_fire(int n, double p_fwd, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_forest_fire: need n >= 1");
  if (p_fwd < 0.0 || p_fwd >= 1.0) throw std::invalid_argument("gen_forest_fire: need 0 <= p_fwd < 1");
  Graph g(n);
  std::vector<char> burned(static_cast<std::size_t>(n), 0);
  std::vector<int> frontier, candidates;
  for (int v = 1; v < n; ++v) {
    std::fill(burned.begin(), burned.begin() + v, 0);
    const int ambassador = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(v)));
    g.add_edge(v, ambassador);
    burned[static_cast<std::size_t>(ambassador)] = 1;
    frontier.assign(1, ambassador);
    while (!frontier.empty()) {
      const int x = frontier.back();
      frontier.pop_back();
      int burn_budget = 0;
      while (rng.bernoulli(p_fwd)) ++burn_budget;
      if (burn_budget == 0) continue;
      candidates.clear();
      for (const int u : g.neighbors(x))
        if (u != v && !burned[static_cast<std::size_t>(u)]) candidates.push_back(u);
      const int take = std::min<int>(burn_budget, static_cast<int>(candidates.size()));
      for (int t = 0; t < take; ++t) {
        const auto pick = t + static_cast<int>(rng.uniform_index(candidates.size() - t));
        std::swap(candidates[static_cast<std::size_t>(t)], candidates[static_cast<std::size_t>(pick)]);
        const int u = candidates[static_cast<std::size_t>(t)];
        burned[static_cast<std::size_t>(u)] = 1;
        g.add_edge(v, u);
        frontier.push_back(u);
      }
    }
  }
  return g;
}

// 2D lattice with 4-neighborhood, no wraparound.
inline Graph gen_grid(int rows, int cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("gen_grid: need rows, cols >= 2");
  Graph g(rows * cols);
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  }
  return g;
}

// Circulant graph: node i connects to (i +- o) mod n for each offset o.
inline Graph gen_circulant(int n, const std::vector<int>& offsets) {
  if (offsets.empty()) throw std::invalid_argument("gen_circulant: offsets must be nonempty");
  for (const int o : offsets)
    if (o < 1 || 2 * o >= n) throw std::invalid_argument("gen_circulant: offsets must be in [1, n/2)");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (const int o : offsets) g.add_edge(i, (i + o) % n);
  return g;
}

enum class Family { kBA, kWS, kKron, kFF, kGrid, kCirculant };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::kBA: return "ba";
    case Family::kWS: return "ws";
    case Family::kKron: return "kron";
    case Family::kFF: return "ff";
    case Family::kGrid: return "grid";
    case Family::kCirculant: return "circulant";
  }
  return "?";
}

inline Family family_from_name(const std::string& name) {
  if (name == "ba") return Family::kBA;
  if (name == "ws") return Family::kWS;
  if (name == "kron") return Family::kKron;
  if (name == "ff") return Family::kFF;
  if (name == "grid") return Family::kGrid;
  if (name == "circulant") return Family::kCirculant;
  throw std::invalid_argument("unknown generator family: " + name);
}

// Parameter record for one synthetic graph; unused fields are ignored by the
// chosen family. JSON (de)serialization lives with the experiment config.
struct GeneratorSpec {
  Family family = Family::kWS;
  int n = 256;
  int m_attach = 2;                                          // ba
  int k = 4;                                                 // ws
  double p = 0.1;                                            // ws
  std::array<std::array<double, 2>, 2> initiator = {{{0.9, 0.5}, {0.5, 0.2}}};  // kron
  int power = 8;                                             // kron
  double p_fwd = 0.35;                                       // ff
  int rows = 16, cols = 16;                                  // grid
  std::vector<int> offsets = {1, 3};                         // circulant
  std::uint64_t seed = 0;

  std::string label() const {
    switch (family) {
      case Family::kBA: return "ba(n=" + std::to_string(n) + ",m=" + std::to_string(m_attach) + ")";
      case Family::kWS: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "ws(n=%d,k=%d,p=%g)", n, k, p);
        return buf;
      }
      case Family::kKron: return "kron(power=" + std::to_string(power) + ")";
      case Family::kFF: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "ff(n=%d,p=%g)", n, p_fwd);
        return buf;
      }
      case Family::kGrid: return "grid(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
      case Family::kCirculant: {
        std::string s = "circulant(n=" + std::to_string(n) + ",offsets=";
        for (std::size_t i = 0; i < offsets.size(); ++i)
          s += (i ? "+" : "") + std::to_string(offsets[i]);
        return s + ")";
      }
    }
    return "?";
  }
};

inline Graph generate(const GeneratorSpec& spec, Rng& rng) {
  switch (spec.family) {
    case Family::kBA: return gen_ba(spec.n, spec.m_attach, rng);
    case Family::kWS: return gen_ws(spec.n, spec.k, spec.p, rng);
    case Family::kKron: return gen_kronecker(spec.initiator, spec.power, rng);
    case Family::kFF: return gen_forest_fire(spec.n, spec.p_fwd, rng);
    case Family::kGrid: return gen_grid(spec.rows, spec.cols);
    case Family::kCirculant: return gen_circulant(spec.n, spec.offsets);
  }
  throw std::logic_error("generate: unreachable");
}

inline Graph generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec, rng);
}

}  // namespace netfill
