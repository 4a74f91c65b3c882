#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netfill/cli.hpp"
#include "netfill/harness.hpp"
#include "netfill/io.hpp"
#include "test_helpers.hpp"

using namespace netfill;

namespace {

ExperimentConfig tiny_experiment() {
  ExperimentConfig cfg;
  cfg.source.is_generator = true;
  cfg.source.gen.family = Family::kWS;
  cfg.source.gen.n = 48;
  cfg.source.gen.k = 4;
  cfg.source.gen.p = 0.1;
  cfg.hide_fraction = 0.25;
  cfg.repeats = 2;
  cfg.completer.epochs = 30;
  cfg.completer.warmup = 10;
  cfg.completer.sample_interval = 5;
  cfg.completer.dims = {16, 8};
  cfg.base_seed = 11;
  return cfg;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "netfill_harness_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("threshold_l_region keeps the observed block and matches the density") {
  Rng graph_rng(3);
  const Graph obs = testing::er_graph(20, 0.3, graph_rng);
  const PartialGraph pg = make_partial(obs, 10);
  Rng rng(5);
  const Matrix p = decode_probabilities(testing::random_matrix(30, 6, rng));
  const Matrix a = threshold_l_region(p, pg);

  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK(a(i, j) == (obs.has_edge(i, j) && i != j ? 1.0 : 0.0));

  long long l_edges = 0;
  for (int i = 0; i < 30; ++i)
    for (int j = std::max(i + 1, 20); j < 30; ++j) {
      CHECK(a(i, j) == a(j, i));
      l_edges += a(i, j) != 0.0 ? 1 : 0;
    }
  const double area_ratio = (900.0 - 400.0) / 400.0;
  CHECK(l_edges == std::llround(static_cast<double>(obs.edge_count()) * area_ratio));
}

TEST_CASE("run_experiment produces one row per method and region") {
  const ExperimentConfig cfg = tiny_experiment();
  const std::vector<ResultRow> rows = run_experiment(cfg);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].method == "proposed");
  CHECK(rows[0].region == "all");
  CHECK(rows[8].method == "random_de");
  CHECK(rows[8].region == "unobserved-unobserved");
  for (const auto& row : rows) {
    CHECK(row.network == cfg.source.gen.label());
    CHECK(row.seed == cfg.base_seed);
    if (row.method == "pa" && row.region == "unobserved-unobserved") {
      CHECK(row.na);
    } else if (row.repeats > 0) {
      CHECK(row.auc_mean > 0.0);
      CHECK(row.auc_mean <= 1.0);
    }
  }
}

TEST_CASE("run_experiment output is byte-identical across invocations") {
  const ExperimentConfig cfg = tiny_experiment();
  const std::string a = results_csv(run_experiment(cfg));
  const std::string b = results_csv(run_experiment(cfg));
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) == kResultCsvHeader);
}

TEST_CASE("pa unobserved-unobserved cells render as n/a") {
  const ExperimentConfig cfg = tiny_experiment();
  const std::string csv = results_csv(run_experiment(cfg));
  bool found = false;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find(",pa,unobserved-unobserved,") != std::string::npos) {
      found = true;
      CHECK(line.find("n/a") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("config JSON round-trips") {
  ExperimentConfig cfg = tiny_experiment();
  cfg.source.gen.family = Family::kKron;
  cfg.source.gen.power = 6;
  cfg.source.gen.initiator = {{{0.8, 0.4}, {0.4, 0.3}}};
  cfg.methods = {"proposed", "pa"};
  const nlohmann::json j = cfg;
  const ExperimentConfig back = j.get<ExperimentConfig>();
  CHECK(back.source.gen.family == Family::kKron);
  CHECK(back.source.gen.power == 6);
  CHECK(back.source.gen.initiator[0][1] == 0.4);
  CHECK(back.methods == cfg.methods);
  CHECK(back.repeats == cfg.repeats);
  CHECK(back.completer.epochs == cfg.completer.epochs);
  CHECK(back.completer.dims == cfg.completer.dims);
  CHECK(back.matcher.max_iters == cfg.matcher.max_iters);
  CHECK(back.base_seed == cfg.base_seed);

  const nlohmann::json edge_source = {{"edge_list", "some/path.edges"}, {"name", "mynet"}};
  const SourceSpec src = edge_source.get<SourceSpec>();
  CHECK_FALSE(src.is_generator);
  CHECK(src.edge_list_path == "some/path.edges");
  CHECK(src.label() == "mynet");
}

TEST_CASE("p-matrix csv round-trips") {
  Rng rng(9);
  const Matrix p = decode_probabilities(testing::random_matrix(12, 4, rng));
  std::ostringstream out;
  write_p_csv(p, out);
  std::istringstream in(out.str());
  const Matrix back = read_p_csv(in);
  REQUIRE(back.rows == 12);
  CHECK(back.data == p.data);
}

TEST_CASE("ws_sweep emits one row per probability") {
  ExperimentConfig cfg = tiny_experiment();
  cfg.repeats = 1;
  cfg.completer.epochs = 20;
  cfg.completer.warmup = 5;
  const auto table = ws_sweep(32, 4, {0.0, 0.5}, cfg);
  REQUIRE(table.size() == 2);
  CHECK(table[0].p == 0.0);
  CHECK(table[0].cc == Catch::Approx(0.5).margin(1e-12));  // ring lattice
  CHECK(std::isfinite(table[0].auc_diff_uu));
  std::ostringstream out;
  write_sweep_csv(table, out);
  CHECK(out.str().rfind("p,cc,auc_diff_ou,auc_diff_uu\n", 0) == 0);
}

TEST_CASE("cc_scatter reports zero clustering for grid and circulant") {
  ExperimentConfig cfg = tiny_experiment();
  cfg.repeats = 1;
  cfg.completer.epochs = 20;
  cfg.completer.warmup = 5;
  std::vector<SourceSpec> networks(2);
  networks[0].is_generator = true;
  networks[0].gen.family = Family::kGrid;
  networks[0].gen.rows = 6;
  networks[0].gen.cols = 6;
  networks[1].is_generator = true;
  networks[1].gen.family = Family::kCirculant;
  networks[1].gen.n = 36;
  networks[1].gen.offsets = {1, 3};
  const auto table = cc_scatter(networks, cfg);
  REQUIRE(table.size() == 2);
  CHECK(table[0].cc == 0.0);
  CHECK(table[1].cc == 0.0);
  CHECK_THROWS_AS(cc_scatter({networks[0]}, cfg), std::invalid_argument);
}

TEST_CASE("cli generate, hide, match and experiment round-trip") {
  const auto dir = temp_dir();
  const auto edges = (dir / "g.edges").string();

  REQUIRE(cli_dispatch({"generate", "--family", "ws", "--n", "64", "--k", "4", "--p", "0.1",
                        "--seed", "7", "--out", edges}) == 0);
  const Graph g = load_edge_list_file(edges);
  CHECK(g.n() == 64);
  CHECK(g.edge_count() == 128);

  const auto prefix = (dir / "instance").string();
  REQUIRE(cli_dispatch({"hide", "--in", edges, "--fraction", "0.25", "--seed", "3",
                        "--out-prefix", prefix}) == 0);
  const auto meta = nlohmann::json::parse(slurp(prefix + ".meta.json"));
  CHECK(meta.at("n_obs").get<int>() == 48);
  CHECK(meta.at("n_miss").get<int>() == 16);
  const Graph truth = load_edge_list_file(prefix + ".truth.edges");
  CHECK(truth.edge_count() == g.edge_count());

  const auto match_out = (dir / "match.json").string();
  REQUIRE(cli_dispatch({"match", "--truth", prefix + ".truth.edges", "--pred",
                        prefix + ".truth.edges", "--seeds", "48", "--out", match_out}) == 0);
  const auto match_json = nlohmann::json::parse(slurp(match_out));
  CHECK(match_json.at("objective").get<double>() == 0.0);
  CHECK(match_json.at("perm").size() == 16);

  // experiment twice: byte-identical CSV, paper refs only on request
  ExperimentConfig cfg = tiny_experiment();
  const auto cfg_path = (dir / "exp.json").string();
  {
    std::ofstream out(cfg_path);
    out << nlohmann::json(cfg).dump(2);
  }
  const auto csv_a = (dir / "a.csv").string();
  const auto csv_b = (dir / "b.csv").string();
  REQUIRE(cli_dispatch({"experiment", "--config", cfg_path, "--out", csv_a}) == 0);
  REQUIRE(cli_dispatch({"experiment", "--config", cfg_path, "--out", csv_b}) == 0);
  CHECK(slurp(csv_a) == slurp(csv_b));
  CHECK(slurp(csv_a).find("paper-reported") == std::string::npos);

  const auto csv_refs = (dir / "refs.csv").string();
  REQUIRE(cli_dispatch({"experiment", "--config", cfg_path, "--out", csv_refs, "--paper-refs"}) ==
          0);
  CHECK(slurp(csv_refs).find("paper-reported") != std::string::npos);

  CHECK(cli_dispatch({"--definitely-not-a-flag"}) == 2);
  CHECK(cli_dispatch({"generate", "--family", "nope", "--out", edges}) == 1);
}

TEST_CASE("cli complete and evaluate work end to end on a tiny instance") {
  const auto dir = temp_dir();
  const auto edges = (dir / "c.edges").string();
  REQUIRE(cli_dispatch({"generate", "--family", "circulant", "--n", "24", "--offsets", "1", "2",
                        "--out", edges}) == 0);
  const auto prefix = (dir / "c").string();
  REQUIRE(cli_dispatch({"hide", "--in", edges, "--count", "6", "--seed", "2", "--out-prefix",
                        prefix}) == 0);
  const auto p_path = (dir / "c.p.csv").string();
  REQUIRE(cli_dispatch({"complete", "--partial", prefix + ".partial.edges", "--n-miss", "6",
                        "--epochs", "25", "--warmup", "5", "--sample-interval", "5", "--dims",
                        "12", "6", "--seed", "4", "--out-p", p_path}) == 0);
  const Matrix p = read_p_csv_file(p_path);
  CHECK(p.rows == 24);

  const auto eval_path = (dir / "c.eval.json").string();
  REQUIRE(cli_dispatch({"evaluate", "--truth", prefix + ".truth.edges", "--p", p_path, "--n-obs",
                        "18", "--seed", "5", "--out", eval_path}) == 0);
  const auto report = nlohmann::json::parse(slurp(eval_path));
  CHECK(report.at("all").at("ok").get<bool>());
}
