#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netfill/harness.hpp"
#include "netfill/io.hpp"

namespace netfill {

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

inline void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_text_file(out_path, j.dump(2) + "\n");
}

}  // namespace detail

// Subcommand dispatcher behind the netfill binary. Exit codes: 0 success,
// 1 runtime failure, 2 usage error.
inline int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"netfill: completion of partially observed networks"};
  app.require_subcommand(1);

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "generate a synthetic graph edge list");
  std::string gen_family;
  GeneratorSpec spec;
  std::vector<double> gen_initiator;
  std::string gen_out;
  generate_cmd->add_option("--family", gen_family, "ba|ws|kron|ff|grid|circulant")->required();
  generate_cmd->add_option("--n", spec.n, "node count (ba, ws, ff, circulant)");
  generate_cmd->add_option("--m-attach", spec.m_attach, "edges per new node (ba)");
  generate_cmd->add_option("--k", spec.k, "ring degree (ws)");
  generate_cmd->add_option("--p", spec.p, "rewiring probability (ws)");
  generate_cmd->add_option("--power", spec.power, "Kronecker power (kron)");
  generate_cmd->add_option("--initiator", gen_initiator, "Kronecker initiator a b c d (kron)")
      ->expected(4);
  generate_cmd->add_option("--p-fwd", spec.p_fwd, "burn probability (ff)");
  generate_cmd->add_option("--rows", spec.rows, "grid rows");
  generate_cmd->add_option("--cols", spec.cols, "grid cols");
  generate_cmd->add_option("--offsets", spec.offsets, "circulant offsets");
  generate_cmd->add_option("--seed", spec.seed, "random seed");
  generate_cmd->add_option("--out", gen_out, "output edge-list path")->required();

  // hide
  auto* hide_cmd = app.add_subcommand("hide", "hide nodes to build a completion instance");
  std::string hide_in, hide_prefix;
  double hide_fraction = 0.0;
  int hide_count = 0;
  std::uint64_t hide_seed = 0;
  hide_cmd->add_option("--in", hide_in, "input edge list")->required();
  hide_cmd->add_option("--fraction", hide_fraction, "fraction of nodes to hide");
  hide_cmd->add_option("--count", hide_count, "number of nodes to hide");
  hide_cmd->add_option("--seed", hide_seed, "random seed");
  hide_cmd->add_option("--out-prefix", hide_prefix,
                       "writes <prefix>.partial.edges, <prefix>.truth.edges, <prefix>.meta.json")
      ->required();

  // complete
  auto* complete_cmd = app.add_subcommand("complete", "train the completer on a partial graph");
  std::string complete_partial, complete_out_p, complete_out_adj;
  int complete_n_miss = 0;
  CompleterConfig completer_cfg;
  complete_cmd->add_option("--partial", complete_partial, "observed-block edge list")->required();
  complete_cmd->add_option("--n-miss", complete_n_miss, "number of missing nodes")->required();
  complete_cmd->add_option("--epochs", completer_cfg.epochs, "training epochs");
  complete_cmd->add_option("--warmup", completer_cfg.warmup, "epochs before first sampling");
  complete_cmd->add_option("--sample-interval", completer_cfg.sample_interval,
                           "epochs between resampling");
  complete_cmd->add_option("--lr", completer_cfg.lr, "learning rate");
  complete_cmd->add_option("--dims", completer_cfg.dims, "hidden widths, last is embedding dim");
  complete_cmd->add_option("--seed", completer_cfg.seed, "random seed");
  complete_cmd->add_option("--out-p", complete_out_p, "output probability-matrix CSV")->required();
  complete_cmd->add_option("--out-adj", complete_out_adj, "output sampled-adjacency edge list");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "region-wise AUC/AP of an aligned P matrix");
  std::string eval_truth, eval_p, eval_out;
  int eval_n_obs = 0;
  std::uint64_t eval_seed = 0;
  evaluate_cmd->add_option("--truth", eval_truth, "ground-truth edge list")->required();
  evaluate_cmd->add_option("--p", eval_p, "aligned probability-matrix CSV")->required();
  evaluate_cmd->add_option("--n-obs", eval_n_obs, "observed node count")->required();
  evaluate_cmd->add_option("--seed", eval_seed, "negative-sampling seed");
  evaluate_cmd->add_option("--out", eval_out, "output JSON path (default stdout)");

  // match
  auto* match_cmd = app.add_subcommand("match", "seeded graph matching of two adjacencies");
  std::string match_truth, match_pred, match_out;
  int match_seeds = 0;
  MatcherConfig matcher_cfg;
  match_cmd->add_option("--truth", match_truth, "ground-truth edge list")->required();
  match_cmd->add_option("--pred", match_pred, "predicted edge list")->required();
  match_cmd->add_option("--seeds", match_seeds, "number of seed nodes (observed count)")->required();
  match_cmd->add_option("--max-iters", matcher_cfg.max_iters, "Frank-Wolfe iteration cap");
  match_cmd->add_option("--tol", matcher_cfg.tol, "relative convergence tolerance");
  match_cmd->add_option("--out", match_out, "output JSON path (default stdout)");

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "run a configured comparison");
  std::string exp_config, exp_out;
  bool exp_paper_refs = false;
  experiment_cmd->add_option("--config", exp_config, "experiment config JSON")->required();
  experiment_cmd->add_option("--out", exp_out, "output results CSV")->required();
  experiment_cmd->add_flag("--paper-refs", exp_paper_refs,
                           "append paper-reported reference rows");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Watts-Strogatz rewiring sweep");
  std::string sweep_config, sweep_out;
  sweep_cmd->add_option("--config", sweep_config, "sweep config JSON")->required();
  sweep_cmd->add_option("--out", sweep_out, "output CSV")->required();

  // scatter
  auto* scatter_cmd = app.add_subcommand("scatter", "clustering-coefficient scatter table");
  std::string scatter_config, scatter_out;
  scatter_cmd->add_option("--config", scatter_config, "scatter config JSON")->required();
  scatter_cmd->add_option("--out", scatter_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*generate_cmd) {
      spec.family = family_from_name(gen_family);
      if (gen_initiator.size() == 4)
        spec.initiator = {{{gen_initiator[0], gen_initiator[1]},
                           {gen_initiator[2], gen_initiator[3]}}};
      const Graph g = generate(spec);
      save_edge_list_file(g, gen_out);
    } else if (*hide_cmd) {
      const Graph g = load_edge_list_file(hide_in);
      int count = hide_count;
      if (count == 0) {
        if (hide_fraction <= 0.0 || hide_fraction >= 1.0)
          throw std::invalid_argument("hide: give --count or --fraction in (0,1)");
        count = std::max<int>(1, static_cast<int>(std::llround(hide_fraction * g.n())));
      }
      Rng rng(hide_seed);
      const HideResult hidden = hide_nodes(g, count, rng);
      save_edge_list_file(hidden.partial.a_obs, hide_prefix + ".partial.edges");
      save_edge_list_file(hidden.truth, hide_prefix + ".truth.edges");
      const nlohmann::json meta = {{"n", g.n()},
                                   {"n_obs", hidden.partial.n_obs},
                                   {"n_miss", hidden.partial.n_miss},
                                   {"hidden_ids", hidden.hidden_ids},
                                   {"seed", hide_seed}};
      detail::write_text_file(hide_prefix + ".meta.json", meta.dump(2) + "\n");
    } else if (*complete_cmd) {
      const Graph observed = load_edge_list_file(complete_partial);
      const PartialGraph pg = make_partial(observed, complete_n_miss);
      const CompletionResult result = complete(pg, completer_cfg);
      write_p_csv_file(result.p_final, complete_out_p);
      if (!complete_out_adj.empty()) {
        Graph sampled(pg.total_n());
        for (int i = 0; i < result.a_sampled.rows; ++i)
          for (int j = i + 1; j < result.a_sampled.cols; ++j)
            if (result.a_sampled(i, j) != 0.0) sampled.add_edge(i, j);
        save_edge_list_file(sampled, complete_out_adj);
      }
    } else if (*evaluate_cmd) {
      const Graph truth = load_edge_list_file(eval_truth);
      const Matrix p = read_p_csv_file(eval_p);
      Rng rng(eval_seed);
      const EvalReport report = evaluate_completion(truth, p, eval_n_obs, rng);
      detail::emit_json(eval_report_json(report), eval_out);
    } else if (*match_cmd) {
      const Graph truth = load_edge_list_file(match_truth);
      const Graph pred = load_edge_list_file(match_pred);
      if (truth.n() != pred.n())
        throw std::invalid_argument("match: graphs have different node counts");
      SeededMatchProblem prob;
      prob.a_true = truth.to_matrix();
      prob.a_pred = pred.to_matrix();
      prob.n_obs = match_seeds;
      const MatchResult result = sgm_align(prob, matcher_cfg.max_iters, matcher_cfg.tol);
      detail::emit_json(match_result_json(result), match_out);
    } else if (*experiment_cmd) {
      const ExperimentConfig cfg = detail::load_json_file(exp_config).get<ExperimentConfig>();
      std::vector<ResultRow> rows = run_experiment(cfg);
      if (exp_paper_refs) {
        const auto refs = paper_reference_rows();
        rows.insert(rows.end(), refs.begin(), refs.end());
      }
      std::ofstream out(exp_out);
      if (!out) throw std::runtime_error("cannot write " + exp_out);
      write_results_csv(rows, out);
    } else if (*sweep_cmd) {
      const nlohmann::json j = detail::load_json_file(sweep_config);
      ExperimentConfig cfg;
      if (j.contains("experiment")) cfg = j.at("experiment").get<ExperimentConfig>();
      const int n = j.value("n", 256);
      const int k = j.value("k", 4);
      const auto p_values = j.value("p_values", std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
      const auto table = ws_sweep(n, k, p_values, cfg);
      std::ofstream out(sweep_out);
      if (!out) throw std::runtime_error("cannot write " + sweep_out);
      write_sweep_csv(table, out);
    } else if (*scatter_cmd) {
      const nlohmann::json j = detail::load_json_file(scatter_config);
      ExperimentConfig cfg;
      if (j.contains("experiment")) cfg = j.at("experiment").get<ExperimentConfig>();
      const auto networks = j.at("networks").get<std::vector<SourceSpec>>();
      const auto table = cc_scatter(networks, cfg);
      std::ofstream out(scatter_out);
      if (!out) throw std::runtime_error("cannot write " + scatter_out);
      write_scatter_csv(table, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int cli_dispatch(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("netfill");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  return cli_dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace netfill
