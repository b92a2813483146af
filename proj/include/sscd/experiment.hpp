#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sscd/constraints.hpp"
#include "sscd/graph.hpp"
#include "sscd/metrics.hpp"
#include "sscd/partition.hpp"

namespace sscd {

enum class Model { NmfLse, NmfKl, Snmf, Spectral };
enum class ConstraintMode { Random, RuleBased };
enum class ObjectiveMatrix { A1, Sk };
enum class OutputFormat { Csv, Json };

// Wall-clock fields are the one nondeterministic part of a result row, so the
// default emission zeroes them; Recorded is for performance tracking.
enum class TimingMode { Zeroed, Recorded };

std::string model_name(Model m);
Model parse_model(const std::string& name);

struct DatasetSpec {
  enum class Kind { Gn, Karate, Football, LfrFile, EdgeList };
  Kind kind = Kind::Karate;
  double gn_z_out = 8.0;
  std::filesystem::path edges_path;  // LfrFile / EdgeList
  std::filesystem::path labels_path;
  Indexing indexing = Indexing::Zero;
  std::filesystem::path data_dir = "data";  // bundled karate/football assets

  std::string name() const;
};

// Loads (or for GN, generates with graph_seed) the configured dataset.
Graph load_dataset(const DatasetSpec& ds, std::uint64_t graph_seed);

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<Model> models = {Model::NmfLse};
  std::vector<double> fractions = {0.0};   // of the labeled-pair universe
  ConstraintMode constraint_mode = ConstraintMode::Random;
  ObjectiveMatrix objective = ObjectiveMatrix::A1;
  int trials = 10;
  double alpha = 2.0;
  int k = 2;
  int iter = 100;
  std::uint64_t master_seed = 0;
  bool paper_literal_normalization = false;  // spectral model only
};

struct TrialRow {
  std::string dataset;
  std::string model;
  double fraction = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double nmi = 0.0;       // NaN when no ground truth is available
  double q = 0.0;
  double accuracy = 0.0;  // NaN when no ground truth is available
  double wall_time = 0.0; // seconds

  bool operator==(const TrialRow&) const = default;
};

struct SweepResult {
  std::vector<TrialRow> rows;  // one per (model, fraction, trial) cell

  bool operator==(const SweepResult&) const = default;
};

// One cell: build A1, sample constraints at `fraction`, encode B, run the
// model, score NMI/accuracy against ground truth (restricted to labeled
// nodes) and modularity against A0. Fully determined by trial_seed.
TrialRow run_trial(const ExperimentConfig& cfg, Model model, double fraction,
                   std::uint64_t trial_seed, int trial_index = 0);

// Same cell, but keeping the partition and the sampled constraints for
// inspection or replay.
struct TrialOutcome {
  TrialRow row;
  Partition partition;
  ConstraintSet constraints;
};
TrialOutcome run_trial_detailed(const ExperimentConfig& cfg, Model model, double fraction,
                                std::uint64_t trial_seed, int trial_index = 0);

// Replay path: skip sampling and encode the given constraints instead. The
// row's fraction field reports their share of the labeled-pair universe.
TrialOutcome run_trial_with_constraints(const ExperimentConfig& cfg, Model model,
                                        const ConstraintSet& cs, std::uint64_t trial_seed);

// Every (model, fraction, trial) cell; per-cell seeds are
// derive_seed(master_seed, {model_idx, fraction_idx, trial_idx}).
SweepResult run_sweep(const ExperimentConfig& cfg);

// CSV or JSON with fixed column order (dataset, model, fraction, trial, seed,
// nmi, q, accuracy, wall_time); per-(model, fraction) mean rows are appended
// with trial = "mean".
std::string emit_results(const SweepResult& r, OutputFormat format,
                         TimingMode timing = TimingMode::Zeroed);

// Inverse of the JSON emission (mean rows are recomputable, so they drop).
SweepResult parse_results_json(const std::string& text);

struct FootballCaseConfig {
  std::filesystem::path data_dir = "data";
  std::vector<int> k_range = {8, 9, 10, 11, 12};
  std::vector<double> fractions = {0.0, 0.05, 0.20};
  int trials = 10;
  int iter = 100;
  // At k = 11 roughly a third of single-init NMF runs fall into a local
  // minimum that merges two conferences; each trial therefore keeps the best
  // objective over this many seeded restarts.
  int restarts = 10;
  double alpha = 2.0;
  std::uint64_t seed = 0;
};

struct FootballCaseReport {
  KSelection k_selection;
  int k_used = 0;
  struct FractionOutcome {
    double fraction = 0.0;
    double mean_misclustered = 0.0;  // over the labeled teams
    double mean_nmi = 0.0;
    std::map<int, int> miscluster_counts;  // team id -> #trials mis-clustered
  };
  std::vector<FractionOutcome> outcomes;
};

// The college-football pipeline: modularity-driven k selection with NMF-LSE,
// then constraint sweeps over the labeled-team pair universe, reporting which
// teams stay mis-clustered.
FootballCaseReport football_case_study(const FootballCaseConfig& cfg);

std::string format_football_report(const FootballCaseReport& report);

}  // namespace sscd
