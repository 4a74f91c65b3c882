#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "netfill/gin.hpp"
#include "netfill/matcher.hpp"
#include "netfill/matrix.hpp"
#include "netfill/metrics.hpp"

namespace netfill {

// Versioned model checkpoint: named parameter arrays with their dims.
inline constexpr int kCheckpointVersion = 1;

inline nlohmann::json model_checkpoint(const GinModel& model) {
  nlohmann::json j;
  j["version"] = kCheckpointVersion;
  j["dims"] = model.dims;
  nlohmann::json params = nlohmann::json::object();
  const char* names[] = {"epsilon", "w1", "b1", "w2", "b2"};
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const Matrix* tensors[] = {&model.layers[l].epsilon, &model.layers[l].w1,
                               &model.layers[l].b1, &model.layers[l].w2, &model.layers[l].b2};
    for (int t = 0; t < 5; ++t) {
      nlohmann::json entry;
      entry["rows"] = tensors[t]->rows;
      entry["cols"] = tensors[t]->cols;
      entry["data"] = tensors[t]->data;
      params["layer" + std::to_string(l) + "." + names[t]] = std::move(entry);
    }
  }
  j["params"] = std::move(params);
  return j;
}

inline GinModel model_from_checkpoint(const nlohmann::json& j) {
  if (j.value("version", 0) != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version");
  GinModel model;
  model.dims = j.at("dims").get<std::vector<int>>();
  const auto& params = j.at("params");
  const char* names[] = {"epsilon", "w1", "b1", "w2", "b2"};
  for (std::size_t l = 0; l + 1 < model.dims.size(); ++l) {
    GinLayer layer;
    Matrix* tensors[] = {&layer.epsilon, &layer.w1, &layer.b1, &layer.w2, &layer.b2};
    for (int t = 0; t < 5; ++t) {
      const auto& entry = params.at("layer" + std::to_string(l) + "." + names[t]);
      Matrix m(entry.at("rows").get<int>(), entry.at("cols").get<int>());
      const auto data = entry.at("data").get<std::vector<double>>();
      if (data.size() != m.data.size()) throw std::runtime_error("checkpoint: size mismatch");
      m.data = data;
      *tensors[t] = std::move(m);
    }
    model.layers.push_back(std::move(layer));
  }
  return model;
}

// Probability-matrix CSV: a "n,<N>" header line, then N row-major rows of
// comma-separated values at full double precision.
inline void write_p_csv(const Matrix& p, std::ostream& out) {
  if (p.rows != p.cols) throw std::invalid_argument("write_p_csv: matrix must be square");
  out << "n," << p.rows << '\n';
  char buf[40];
  for (int i = 0; i < p.rows; ++i) {
    for (int j = 0; j < p.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

inline Matrix read_p_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("p csv: empty input");
  int n = 0;
  if (std::sscanf(line.c_str(), "n,%d", &n) != 1 || n < 1)
    throw std::runtime_error("p csv: expected header \"n,<size>\"");
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("p csv: truncated at row " + std::to_string(i));
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("p csv: row " + std::to_string(i) + " has too few columns");
      p(i, j) = std::stod(cell);
    }
  }
  return p;
}

inline void write_p_csv_file(const Matrix& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_p_csv(p, out);
}

inline Matrix read_p_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_p_csv(in);
}

inline nlohmann::json region_scores_json(const RegionScores& scores) {
  nlohmann::json j;
  j["ok"] = scores.ok;
  if (scores.ok) {
    j["auc"] = scores.auc;
    j["ap"] = scores.ap;
    j["n_pos"] = scores.n_pos;
    j["n_neg"] = scores.n_neg;
    if (scores.imbalanced) j["imbalanced"] = true;
  } else {
    j["error"] = scores.error;
  }
  return j;
}

inline nlohmann::json eval_report_json(const EvalReport& report) {
  return nlohmann::json{{"all", region_scores_json(report.all)},
                        {"observed-unobserved", region_scores_json(report.obs_unobs)},
                        {"unobserved-unobserved", region_scores_json(report.unobs_unobs)}};
}

inline nlohmann::json match_result_json(const MatchResult& result) {
  return nlohmann::json{{"perm", result.perm},
                        {"objective", result.objective},
                        {"iterations", result.iterations}};
}

}  // namespace netfill
