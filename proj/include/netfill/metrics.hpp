#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netfill/graph.hpp"
#include "netfill/matrix.hpp"
#include "netfill/rng.hpp"

namespace netfill {

// Pair regions of the inverted L: every pair touching an unobserved node,
// the observed-unobserved band, and the unobserved-unobserved block.
enum class Region { kAll, kObsUnobs, kUnobsUnobs };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::kAll: return "all";
    case Region::kObsUnobs: return "observed-unobserved";
    case Region::kUnobsUnobs: return "unobserved-unobserved";
  }
  return "?";
}

inline bool region_contains(Region r, int i, int j, int n_obs) {
  const bool i_unobs = i >= n_obs;
  const bool j_unobs = j >= n_obs;
  switch (r) {
    case Region::kAll: return i_unobs || j_unobs;
    case Region::kObsUnobs: return i_unobs != j_unobs;
    case Region::kUnobsUnobs: return i_unobs && j_unobs;
  }
  return false;
}

struct PairSample {
  std::vector<std::pair<int, int>> positives;
  std::vector<std::pair<int, int>> negatives;
  bool imbalanced = false;  // fewer non-edges than edges in the region
};

// Positives are all region edges; negatives are a uniform sample of region
// non-edges of the same size (all of them, flagged, when the region is too
// dense to balance).
inline PairSample sample_region_pairs(const Graph& a_true, int n_obs, Region region, Rng& rng) {
  if (n_obs < 0 || n_obs >= a_true.n())
    throw std::invalid_argument("sample_region_pairs: need 0 <= n_obs < n");
  PairSample sample;
  std::vector<std::pair<int, int>> non_edges;
  for (int i = 0; i < a_true.n(); ++i) {
    for (int j = i + 1; j < a_true.n(); ++j) {
      if (!region_contains(region, i, j, n_obs)) continue;
      if (a_true.has_edge(i, j))
        sample.positives.emplace_back(i, j);
      else
        non_edges.emplace_back(i, j);
    }
  }
  if (sample.positives.empty())
    throw std::runtime_error(std::string("region ") + region_name(region) + " has no edges");
  if (non_edges.size() <= sample.positives.size()) {
    if (non_edges.empty())
      throw std::runtime_error(std::string("region ") + region_name(region) + " has no non-edges");
    sample.negatives = std::move(non_edges);
    sample.imbalanced = sample.negatives.size() < sample.positives.size();
    return sample;
  }
  const std::size_t want = sample.positives.size();
  for (std::size_t t = 0; t < want; ++t) {
    const std::size_t pick = t + rng.uniform_index(non_edges.size() - t);
    std::swap(non_edges[t], non_edges[pick]);
  }
  non_edges.resize(want);
  sample.negatives = std::move(non_edges);
  return sample;
}

// Rank statistic: (number of pos > neg pairs + 0.5 * ties) / (|pos| * |neg|),
// computed through tie-averaged ranks in O(n log n).
inline double auc(const std::vector<double>& pos, const std::vector<double>& neg) {
  if (pos.empty() || neg.empty()) throw std::invalid_argument("auc: empty score list");
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(pos.size() + neg.size());
  for (const double s : pos) scored.emplace_back(s, true);
  for (const double s : neg) scored.emplace_back(s, false);
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < scored.size()) {
    std::size_t j = i;
    while (j < scored.size() && scored[j].first == scored[i].first) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based average over the tie block
    for (std::size_t t = i; t < j; ++t)
      if (scored[t].second) rank_sum_pos += avg_rank;
    i = j;
  }
  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

// Mean precision at each positive's rank after sorting scores descending;
// ties rank negatives first (pessimistic).
inline double average_precision(const std::vector<double>& pos, const std::vector<double>& neg) {
  if (pos.empty() || neg.empty()) throw std::invalid_argument("average_precision: empty score list");
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(pos.size() + neg.size());
  for (const double s : pos) scored.emplace_back(s, true);
  for (const double s : neg) scored.emplace_back(s, false);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // negatives ahead of tied positives
  });
  double sum = 0.0;
  int hits = 0;
  for (std::size_t r = 0; r < scored.size(); ++r) {
    if (!scored[r].second) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return sum / static_cast<double>(pos.size());
}

struct RegionScores {
  bool ok = false;
  std::string error;
  double auc = std::numeric_limits<double>::quiet_NaN();
  double ap = std::numeric_limits<double>::quiet_NaN();
  int n_pos = 0;
  int n_neg = 0;
  bool imbalanced = false;
};

struct EvalReport {
  RegionScores all;
  RegionScores obs_unobs;
  RegionScores unobs_unobs;

  const RegionScores& by_region(Region r) const {
    switch (r) {
      case Region::kAll: return all;
      case Region::kObsUnobs: return obs_unobs;
      case Region::kUnobsUnobs: return unobs_unobs;
    }
    throw std::logic_error("by_region: unreachable");
  }
};

// Scores p_aligned against the ground truth per region with balanced
// sampling. A failing region (no edges, say) is reported in place; the other
// regions are still computed. Never reads observed-observed pairs.
inline EvalReport evaluate_completion(const Graph& a_true, const Matrix& p_aligned, int n_obs,
                                      Rng& rng) {
  if (p_aligned.rows != a_true.n() || p_aligned.cols != a_true.n())
    throw std::invalid_argument("evaluate_completion: p_aligned shape mismatch");
  EvalReport report;
  const Region regions[] = {Region::kAll, Region::kObsUnobs, Region::kUnobsUnobs};
  RegionScores* slots[] = {&report.all, &report.obs_unobs, &report.unobs_unobs};
  for (int r = 0; r < 3; ++r) {
    RegionScores& scores = *slots[r];
    try {
      const PairSample sample = sample_region_pairs(a_true, n_obs, regions[r], rng);
      std::vector<double> pos, neg;
      pos.reserve(sample.positives.size());
      neg.reserve(sample.negatives.size());
      for (const auto& [i, j] : sample.positives) pos.push_back(p_aligned(i, j));
      for (const auto& [i, j] : sample.negatives) neg.push_back(p_aligned(i, j));
      scores.auc = auc(pos, neg);
      scores.ap = average_precision(pos, neg);
      scores.n_pos = static_cast<int>(pos.size());
      scores.n_neg = static_cast<int>(neg.size());
      scores.imbalanced = sample.imbalanced;
      scores.ok = true;
    } catch (const std::exception& e) {
      scores.ok = false;
      scores.error = e.what();
    }
  }
  return report;
}

}  // namespace netfill
