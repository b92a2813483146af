// Command-line front end: dataset generation, single runs, constraint sweeps,
// metric evaluation, modularity-based k selection, and the football study.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sscd/constraints.hpp"
#include "sscd/experiment.hpp"
#include "sscd/gn.hpp"
#include "sscd/graph.hpp"
#include "sscd/metrics.hpp"
#include "sscd/nmf.hpp"
#include "sscd/rng.hpp"
#include "sscd/spectral.hpp"

namespace {

using namespace sscd;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string partition_text(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(p.labels[i]);
    out += '\n';
  }
  return out;
}

struct DatasetOptions {
  std::string dataset = "karate";
  double zout = 8.0;
  std::string edges;
  std::string labels;
  std::string indexing = "zero";
  std::string data_dir = "data";

  void attach(CLI::App* cmd) {
    cmd->add_option("--dataset", dataset, "Dataset: gn, karate, football, lfr-file, edge-list")
        ->check(CLI::IsMember({"gn", "karate", "football", "lfr-file", "edge-list"}))
        ->capture_default_str();
    cmd->add_option("--zout", zout, "Expected inter-community degree for gn")
        ->capture_default_str();
    cmd->add_option("--edges", edges, "Edge-list path for lfr-file / edge-list datasets");
    cmd->add_option("--labels", labels, "Label path for lfr-file / edge-list datasets");
    cmd->add_option("--indexing", indexing, "Node indexing of input files")
        ->check(CLI::IsMember({"zero", "one"}))
        ->capture_default_str();
    cmd->add_option("--data-dir", data_dir, "Directory holding the bundled datasets")
        ->capture_default_str();
  }

  DatasetSpec spec() const {
    DatasetSpec ds;
    if (dataset == "gn") ds.kind = DatasetSpec::Kind::Gn;
    else if (dataset == "karate") ds.kind = DatasetSpec::Kind::Karate;
    else if (dataset == "football") ds.kind = DatasetSpec::Kind::Football;
    else if (dataset == "lfr-file") ds.kind = DatasetSpec::Kind::LfrFile;
    else ds.kind = DatasetSpec::Kind::EdgeList;
    ds.gn_z_out = zout;
    ds.edges_path = edges;
    ds.labels_path = labels;
    ds.indexing = indexing == "one" ? Indexing::One : Indexing::Zero;
    ds.data_dir = data_dir;
    if ((ds.kind == DatasetSpec::Kind::LfrFile || ds.kind == DatasetSpec::Kind::EdgeList) &&
        edges.empty()) {
      throw CLI::ValidationError("--edges is required for file-based datasets");
    }
    return ds;
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"Semi-supervised community detection via constraint-encoded adjacency matrices"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file (sections per subcommand)");

  // ---- generate-gn ----
  auto* gen = app.add_subcommand("generate-gn", "Generate a planted-partition benchmark network");
  struct {
    double zout = 8.0;
    std::uint64_t seed = 0;
    int n = 128;
    int communities = 4;
    int total_degree = 16;
    std::string out = "-";
    std::string labels;
  } gen_opt;
  gen->add_option("--zout", gen_opt.zout, "Expected inter-community degree")->capture_default_str();
  gen->add_option("--seed", gen_opt.seed, "RNG seed")->capture_default_str();
  gen->add_option("--n", gen_opt.n, "Node count")->capture_default_str();
  gen->add_option("--communities", gen_opt.communities, "Community count")->capture_default_str();
  gen->add_option("--total-degree", gen_opt.total_degree, "Expected total degree")
      ->capture_default_str();
  gen->add_option("--out", gen_opt.out, "Edge-list output path (- for stdout)")
      ->capture_default_str();
  gen->add_option("--labels", gen_opt.labels, "Planted-label output path");
  gen->callback([&] {
    GnConfig cfg;
    cfg.n = gen_opt.n;
    cfg.communities = gen_opt.communities;
    cfg.total_degree = gen_opt.total_degree;
    cfg.z_out = gen_opt.zout;
    cfg.seed = gen_opt.seed;
    const Graph g = generate_gn(cfg);
    std::string edges = emit_edge_list(g);
    if (!edges.empty()) edges += '\n';
    write_text(gen_opt.out, edges);
    if (!gen_opt.labels.empty()) {
      std::string text;
      for (const auto& [node, community] : g.labels) {
        text += std::to_string(node) + ' ' + std::to_string(community) + '\n';
      }
      write_text(gen_opt.labels, text);
    }
  });

  // ---- run ----
  auto* run = app.add_subcommand("run", "Run one model on one dataset and report NMI/Q/accuracy");
  DatasetOptions run_ds;
  run_ds.attach(run);
  struct {
    std::string model = "nmf-lse";
    int k = 2;
    int iter = 100;
    std::uint64_t seed = 0;
    double fraction = 0.0;
    double alpha = 2.0;
    std::string constraint_mode = "random";
    std::string objective = "a1";
    bool paper_literal = false;
    std::string out;
    std::string save_constraints;
    std::string constraints_file;
  } run_opt;
  run->add_option("--model", run_opt.model, "nmf-lse, nmf-kl, snmf, or spectral")
      ->capture_default_str();
  run->add_option("--k", run_opt.k, "Community count")->capture_default_str();
  run->add_option("--iter", run_opt.iter, "NMF iteration count")->capture_default_str();
  run->add_option("--seed", run_opt.seed, "Trial seed")->capture_default_str();
  run->add_option("--fraction", run_opt.fraction, "Fraction of node pairs to constrain")
      ->capture_default_str();
  run->add_option("--alpha", run_opt.alpha, "Must-link weight in the encoded matrix")
      ->capture_default_str();
  run->add_option("--constraint-mode", run_opt.constraint_mode, "random or rule-based")
      ->check(CLI::IsMember({"random", "rule-based"}))
      ->capture_default_str();
  run->add_option("--objective", run_opt.objective, "NMF objective matrix: a1 or sk")
      ->check(CLI::IsMember({"a1", "sk"}))
      ->capture_default_str();
  run->add_flag("--paper-literal-normalization", run_opt.paper_literal,
                "Use the D^{+1/2} B D^{+1/2} spectral normalisation variant");
  run->add_option("--out", run_opt.out, "Write the partition as \"node community\" lines");
  run->add_option("--save-constraints", run_opt.save_constraints,
                  "Write the sampled constraints for audit/replay");
  run->add_option("--constraints", run_opt.constraints_file,
                  "Replay constraints from a file instead of sampling");
  run->callback([&] {
    ExperimentConfig cfg;
    cfg.dataset = run_ds.spec();
    cfg.k = run_opt.k;
    cfg.iter = run_opt.iter;
    cfg.alpha = run_opt.alpha;
    cfg.constraint_mode =
        run_opt.constraint_mode == "rule-based" ? ConstraintMode::RuleBased : ConstraintMode::Random;
    cfg.objective = run_opt.objective == "sk" ? ObjectiveMatrix::Sk : ObjectiveMatrix::A1;
    cfg.paper_literal_normalization = run_opt.paper_literal;
    const Model model = parse_model(run_opt.model);

    TrialOutcome outcome;
    if (!run_opt.constraints_file.empty()) {
      std::ifstream in(run_opt.constraints_file, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + run_opt.constraints_file);
      std::ostringstream ss;
      ss << in.rdbuf();
      outcome = run_trial_with_constraints(cfg, model, parse_constraints(ss.str()), run_opt.seed);
    } else {
      outcome = run_trial_detailed(cfg, model, run_opt.fraction, run_opt.seed);
    }

    if (!run_opt.out.empty()) write_text(run_opt.out, partition_text(outcome.partition));
    if (!run_opt.save_constraints.empty()) {
      write_text(run_opt.save_constraints, emit_constraints(outcome.constraints));
    }
    SweepResult single;
    single.rows.push_back(outcome.row);
    std::cout << emit_results(single, OutputFormat::Csv);
  });

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "Sweep constraint fractions over models and trials");
  DatasetOptions sweep_ds;
  sweep_ds.attach(sweep);
  struct {
    std::vector<std::string> models = {"nmf-lse"};
    std::vector<double> fractions = {0.0};
    int trials = 10;
    int k = 2;
    int iter = 100;
    double alpha = 2.0;
    std::uint64_t seed = 0;
    std::string constraint_mode = "random";
    std::string objective = "a1";
    std::string format = "csv";
    std::string out = "-";
    bool with_timing = false;
  } sweep_opt;
  sweep->add_option("--models", sweep_opt.models, "Comma-separated model list")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--fractions", sweep_opt.fractions, "Comma-separated constraint fractions")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--trials", sweep_opt.trials, "Trials per (model, fraction) cell")
      ->capture_default_str();
  sweep->add_option("--k", sweep_opt.k, "Community count")->capture_default_str();
  sweep->add_option("--iter", sweep_opt.iter, "NMF iteration count")->capture_default_str();
  sweep->add_option("--alpha", sweep_opt.alpha, "Must-link weight")->capture_default_str();
  sweep->add_option("--seed", sweep_opt.seed, "Master seed")->capture_default_str();
  sweep->add_option("--constraint-mode", sweep_opt.constraint_mode, "random or rule-based")
      ->check(CLI::IsMember({"random", "rule-based"}))
      ->capture_default_str();
  sweep->add_option("--objective", sweep_opt.objective, "NMF objective matrix: a1 or sk")
      ->check(CLI::IsMember({"a1", "sk"}))
      ->capture_default_str();
  sweep->add_option("--format", sweep_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", sweep_opt.out, "Output path (- for stdout)")->capture_default_str();
  sweep->add_flag("--with-timing", sweep_opt.with_timing,
                  "Emit measured wall times (off by default so repeated sweeps are byte-identical)");
  sweep->callback([&] {
    ExperimentConfig cfg;
    cfg.dataset = sweep_ds.spec();
    cfg.models.clear();
    for (const std::string& name : sweep_opt.models) cfg.models.push_back(parse_model(name));
    cfg.fractions = sweep_opt.fractions;
    cfg.trials = sweep_opt.trials;
    cfg.k = sweep_opt.k;
    cfg.iter = sweep_opt.iter;
    cfg.alpha = sweep_opt.alpha;
    cfg.master_seed = sweep_opt.seed;
    cfg.constraint_mode = sweep_opt.constraint_mode == "rule-based" ? ConstraintMode::RuleBased
                                                                    : ConstraintMode::Random;
    cfg.objective = sweep_opt.objective == "sk" ? ObjectiveMatrix::Sk : ObjectiveMatrix::A1;
    const SweepResult result = run_sweep(cfg);
    const OutputFormat fmt = sweep_opt.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    const TimingMode timing = sweep_opt.with_timing ? TimingMode::Recorded : TimingMode::Zeroed;
    write_text(sweep_opt.out, emit_results(result, fmt, timing));
  });

  // ---- evaluate ----
  auto* eval = app.add_subcommand("evaluate", "Score a computed partition against ground truth");
  struct {
    std::string truth;
    std::string computed;
    std::string metric = "nmi";
    std::string edges;
    std::string indexing = "zero";
  } eval_opt;
  eval->add_option("--truth", eval_opt.truth, "Ground-truth label file")->required();
  eval->add_option("--computed", eval_opt.computed, "Computed label file")->required();
  eval->add_option("--metric", eval_opt.metric, "nmi, q, or acc")
      ->check(CLI::IsMember({"nmi", "q", "acc"}))
      ->capture_default_str();
  eval->add_option("--edges", eval_opt.edges, "Edge list (required for q)");
  eval->add_option("--indexing", eval_opt.indexing, "Node indexing of input files")
      ->check(CLI::IsMember({"zero", "one"}))
      ->capture_default_str();
  eval->callback([&] {
    const Indexing idx = eval_opt.indexing == "one" ? Indexing::One : Indexing::Zero;
    const auto computed = load_labels_file(eval_opt.computed, idx);
    if (eval_opt.metric == "q") {
      if (eval_opt.edges.empty()) throw CLI::ValidationError("--edges is required for q");
      const Graph g = load_edge_list_file(eval_opt.edges, idx);
      if (static_cast<int>(computed.size()) != g.n) {
        throw std::runtime_error("computed labels cover " + std::to_string(computed.size()) +
                                 " nodes but the graph has " + std::to_string(g.n));
      }
      Partition p;
      p.labels.assign(g.n, 0);
      int max_label = 0;
      for (const auto& [node, community] : computed) {
        if (node >= g.n) throw std::runtime_error("computed labels exceed the node range");
        p.labels[node] = community;
        max_label = std::max(max_label, community);
      }
      p.k = max_label + 1;
      std::cout << modularity_q(g, p) << "\n";
      return;
    }
    const auto truth = load_labels_file(eval_opt.truth, idx);
    std::vector<int> t, c;
    for (const auto& [node, community] : truth) {
      const auto it = computed.find(node);
      if (it == computed.end()) {
        throw std::runtime_error("computed labels miss node " + std::to_string(node));
      }
      t.push_back(community);
      c.push_back(it->second);
    }
    std::cout << (eval_opt.metric == "nmi" ? nmi(t, c) : matched_accuracy(t, c)) << "\n";
  });

  // ---- select-k ----
  auto* selk = app.add_subcommand("select-k", "Pick k by averaged modularity over seeded runs");
  DatasetOptions selk_ds;
  selk_ds.attach(selk);
  struct {
    int k_min = 8;
    int k_max = 12;
    int trials = 10;
    int iter = 100;
    std::uint64_t seed = 0;
    std::string model = "nmf-lse";
  } selk_opt;
  selk->add_option("--k-min", selk_opt.k_min, "Smallest k")->capture_default_str();
  selk->add_option("--k-max", selk_opt.k_max, "Largest k")->capture_default_str();
  selk->add_option("--trials", selk_opt.trials, "Runs averaged per k")->capture_default_str();
  selk->add_option("--iter", selk_opt.iter, "NMF iteration count")->capture_default_str();
  selk->add_option("--seed", selk_opt.seed, "Master seed")->capture_default_str();
  selk->add_option("--model", selk_opt.model, "nmf-lse, nmf-kl, snmf, or spectral")
      ->capture_default_str();
  selk->callback([&] {
    if (selk_opt.k_min > selk_opt.k_max) throw CLI::ValidationError("--k-min exceeds --k-max");
    const Graph g = load_dataset(selk_ds.spec(), selk_opt.seed);
    const Eigen::MatrixXd a1 = adjacency_a1(g);
    const Model model = parse_model(selk_opt.model);
    const ModelRunner runner = [&](int k, std::uint64_t seed) {
      switch (model) {
        case Model::NmfLse:
        case Model::NmfKl:
        case Model::Snmf: {
          NmfConfig cfg{.k = k, .iter = selk_opt.iter, .seed = seed};
          cfg.variant = model == Model::NmfLse  ? NmfVariant::Lse
                        : model == Model::NmfKl ? NmfVariant::Kl
                                                : NmfVariant::Snmf;
          return assign_partition(run_nmf(a1, cfg).g);
        }
        case Model::Spectral: {
          SpectralConfig cfg;
          cfg.k = k;
          cfg.seed = seed;
          return spectral_cluster(a1, cfg);
        }
      }
      throw std::logic_error("select-k: unknown model");
    };
    std::vector<int> ks;
    for (int k = selk_opt.k_min; k <= selk_opt.k_max; ++k) ks.push_back(k);
    const KSelection sel = select_k_by_q(g, runner, ks, selk_opt.trials, selk_opt.seed);
    for (const auto& [k, q] : sel.mean_q_by_k) {
      std::cout << "k=" << k << " mean_q=" << q << (k == sel.k_best ? "  <-- selected" : "")
                << "\n";
    }
  });

  // ---- case-football ----
  auto* football = app.add_subcommand(
      "case-football", "Full football pipeline: k selection then constraint sweeps");
  struct {
    std::string data_dir = "data";
    int trials = 10;
    int iter = 100;
    int restarts = 10;
    double alpha = 2.0;
    std::uint64_t seed = 0;
  } fb_opt;
  football->add_option("--data-dir", fb_opt.data_dir, "Directory holding the bundled datasets")
      ->capture_default_str();
  football->add_option("--trials", fb_opt.trials, "Trials per configuration")
      ->capture_default_str();
  football->add_option("--iter", fb_opt.iter, "NMF iteration count")->capture_default_str();
  football->add_option("--restarts", fb_opt.restarts, "NMF restarts per trial (best objective wins)")
      ->capture_default_str();
  football->add_option("--alpha", fb_opt.alpha, "Must-link weight")->capture_default_str();
  football->add_option("--seed", fb_opt.seed, "Master seed")->capture_default_str();
  football->callback([&] {
    FootballCaseConfig cfg;
    cfg.data_dir = fb_opt.data_dir;
    cfg.trials = fb_opt.trials;
    cfg.iter = fb_opt.iter;
    cfg.restarts = fb_opt.restarts;
    cfg.alpha = fb_opt.alpha;
    cfg.seed = fb_opt.seed;
    std::cout << format_football_report(football_case_study(cfg));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
