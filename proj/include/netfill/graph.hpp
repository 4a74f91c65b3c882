#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"

namespace netfill {

// Simple undirected graph on nodes 0..n-1: symmetric 0/1 adjacency, no
// self-loops. Dense byte storage; values are treated as immutable once a
// graph has been handed to consumers, so sharing across workers is safe.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0), deg_(n, 0) {
    if (n < 0) throw std::invalid_argument("Graph: negative node count");
  }

  int n() const { return n_; }
  long long edge_count() const { return m_; }

  bool has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    return adj_[idx(u, v)] != 0;
  }

  void add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
    if (adj_[idx(u, v)]) return;  // duplicates collapse
    adj_[idx(u, v)] = 1;
    adj_[idx(v, u)] = 1;
    ++deg_[static_cast<std::size_t>(u)];
    ++deg_[static_cast<std::size_t>(v)];
    ++m_;
  }

  void remove_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (!adj_[idx(u, v)]) return;
    adj_[idx(u, v)] = 0;
    adj_[idx(v, u)] = 0;
    --deg_[static_cast<std::size_t>(u)];
    --deg_[static_cast<std::size_t>(v)];
    --m_;
  }

  int degree(int v) const {
    check_node(v);
    return deg_[static_cast<std::size_t>(v)];
  }

  std::vector<int> neighbors(int v) const {
    check_node(v);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(deg_[static_cast<std::size_t>(v)]));
    const std::uint8_t* row = adj_.data() + static_cast<std::size_t>(v) * n_;
    for (int u = 0; u < n_; ++u)
      if (row[u]) out.push_back(u);
    return out;
  }

  Matrix to_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < adj_.size(); ++i) m.data[i] = adj_[i] ? 1.0 : 0.0;
    return m;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < n_; ++i) {
      const std::uint8_t* row = adj_.data() + static_cast<std::size_t>(i) * n_;
      for (int j = i + 1; j < n_; ++j)
        if (row[j]) out.emplace_back(i, j);
    }
    return out;
  }

  bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

 private:
  std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  void check_node(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Graph: node index " + std::to_string(v));
  }

  int n_ = 0;
  long long m_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<int> deg_;
};

// Observed upper-left block of a partially observed network plus the known
// number of missing nodes.
struct PartialGraph {
  int n_obs = 0;
  int n_miss = 0;
  Graph a_obs;

  int total_n() const { return n_obs + n_miss; }
};

inline PartialGraph make_partial(Graph a_obs, int n_miss) {
  if (a_obs.n() < 2) throw std::invalid_argument("PartialGraph: need at least 2 observed nodes");
  if (n_miss < 1) throw std::invalid_argument("PartialGraph: need at least 1 missing node");
  PartialGraph pg;
  pg.n_obs = a_obs.n();
  pg.n_miss = n_miss;
  pg.a_obs = std::move(a_obs);
  return pg;
}

struct HideResult {
  PartialGraph partial;
  Graph truth;                  // relabeled: observed nodes occupy 0..n_obs-1
  std::vector<int> hidden_ids;  // original indices of the hidden nodes
};

// Parses "u v" lines; '#' starts a comment, blank lines are skipped.
// Self-loops are dropped, duplicates collapse, edges are symmetrized.
// Node count is 1 + the largest index seen.
inline Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<long, long>> pairs;
  long max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u = 0, v = 0;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                                ": expected \"u v\"");
    std::string rest;
    if (ls >> rest)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": trailing token \"" + rest + "\"");
    if (u < 0 || v < 0)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": negative node index");
    pairs.emplace_back(u, v);
    max_index = std::max({max_index, u, v});
  }
  if (pairs.empty()) throw std::invalid_argument("edge list: no edges found");
  Graph g(static_cast<int>(max_index + 1));
  for (const auto& [u, v] : pairs)
    if (u != v) g.add_edge(static_cast<int>(u), static_cast<int>(v));
  return g;
}

inline Graph load_edge_list(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

inline Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return load_edge_list(in);
}

// One "i j" line per unordered edge with i < j, sorted, newline-terminated.
// Round-trips through load_edge_list for graphs whose last node has an edge.
inline std::string save_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [i, j] : g.edges()) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(j);
    out += '\n';
  }
  return out;
}

inline void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  out << save_edge_list(g);
}

// Average of local clustering coefficients; nodes with degree < 2 count as 0.
inline double clustering_coefficient(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("clustering_coefficient: empty graph");
  double total = 0.0;
  for (int v = 0; v < g.n(); ++v) {
    const int d = g.degree(v);
    if (d < 2) continue;
    const auto nb = g.neighbors(v);
    long long links = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (g.has_edge(nb[a], nb[b])) ++links;
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
  }
  return total / g.n();
}

inline double density(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("density: need at least 2 nodes");
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(g.n()) * (g.n() - 1));
}

// Hides `count` uniformly chosen nodes. The graph is relabeled so observed
// nodes come first; both classes keep their relative order, so the
// bookkeeping is a single index map.
inline HideResult hide_nodes(const Graph& g, int count, Rng& rng) {
  if (count < 1 || count > g.n() - 2)
    throw std::invalid_argument("hide_nodes: count must be in [1, n-2]");
  const int n = g.n();
  const int n_obs = n - count;
  const std::vector<int> hidden = sample_indices(n, count, rng);

  std::vector<char> is_hidden(static_cast<std::size_t>(n), 0);
  for (const int h : hidden) is_hidden[static_cast<std::size_t>(h)] = 1;

  std::vector<int> new_label(static_cast<std::size_t>(n));
  int next_obs = 0, next_hid = n_obs;
  for (int v = 0; v < n; ++v)
    new_label[static_cast<std::size_t>(v)] = is_hidden[static_cast<std::size_t>(v)] ? next_hid++ : next_obs++;

  Graph truth(n);
  Graph observed(n_obs);
  for (const auto& [u, v] : g.edges()) {
    const int nu = new_label[static_cast<std::size_t>(u)];
    const int nv = new_label[static_cast<std::size_t>(v)];
    truth.add_edge(nu, nv);
    if (nu < n_obs && nv < n_obs) observed.add_edge(nu, nv);
  }

  HideResult result;
  result.partial = make_partial(std::move(observed), count);
  result.truth = std::move(truth);
  result.hidden_ids = hidden;
  return result;
}

}  // namespace netfill
