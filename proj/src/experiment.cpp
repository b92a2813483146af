#include "sscd/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "sscd/gn.hpp"
#include "sscd/kernels.hpp"
#include "sscd/nmf.hpp"
#include "sscd/rng.hpp"
#include "sscd/spectral.hpp"

namespace sscd {
namespace {

// Seed stream tags so the graph, constraint, and solver draws never collide.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kConstraintStream = 2;
constexpr std::uint64_t kSolverStream = 3;

std::string format_double(double v, const char* fmt) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

Partition run_model(Model model, const Eigen::MatrixXd& x, int k, int iter, std::uint64_t seed,
                    bool paper_literal_normalization) {
  switch (model) {
    case Model::NmfLse: {
      NmfConfig cfg{.k = k, .iter = iter, .seed = seed, .variant = NmfVariant::Lse};
      return assign_partition(nmf_lse(x, cfg).g);
    }
    case Model::NmfKl: {
      NmfConfig cfg{.k = k, .iter = iter, .seed = seed, .variant = NmfVariant::Kl};
      return assign_partition(nmf_kl(x, cfg).g);
    }
    case Model::Snmf: {
      NmfConfig cfg{.k = k, .iter = iter, .seed = seed, .variant = NmfVariant::Snmf};
      return assign_partition(snmf(x, cfg).g);
    }
    case Model::Spectral: {
      SpectralConfig cfg;
      cfg.k = k;
      cfg.seed = seed;
      cfg.paper_literal_normalization = paper_literal_normalization;
      return spectral_cluster(x, cfg);
    }
  }
  throw std::logic_error("run_model: unknown model");
}

// Ground truth and computed labels restricted to the labeled subset, aligned
// by ascending node id.
void restrict_to_labeled(const Graph& g, const Partition& p, std::vector<int>& truth,
                         std::vector<int>& computed) {
  truth.clear();
  computed.clear();
  for (const auto& [node, community] : g.labels) {
    truth.push_back(community);
    computed.push_back(p.labels[node]);
  }
}

ConstraintSet sample_for_trial(const ExperimentConfig& cfg, const Graph& g, double fraction,
                               std::uint64_t seed, const Eigen::MatrixXd& a1) {
  if (fraction == 0.0) return {};
  if (!g.has_labels()) {
    throw std::invalid_argument("constraint sampling needs ground-truth labels");
  }
  if (cfg.constraint_mode == ConstraintMode::Random) {
    return sample_random_constraints(g.labels, fraction, seed);
  }
  const std::size_t universe = pair_universe_size(g.labels.size());
  const auto count = static_cast<int>(std::floor(fraction * static_cast<double>(universe)));
  return sample_rule_based_constraints(a1, g.labels, count - count % 2, seed);
}

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::NmfLse: return "nmf-lse";
    case Model::NmfKl: return "nmf-kl";
    case Model::Snmf: return "snmf";
    case Model::Spectral: return "spectral";
  }
  throw std::logic_error("model_name: unknown model");
}

Model parse_model(const std::string& name) {
  if (name == "nmf-lse") return Model::NmfLse;
  if (name == "nmf-kl") return Model::NmfKl;
  if (name == "snmf") return Model::Snmf;
  if (name == "spectral") return Model::Spectral;
  throw std::invalid_argument("unknown model \"" + name +
                              "\" (expected nmf-lse, nmf-kl, snmf, or spectral)");
}

std::string DatasetSpec::name() const {
  switch (kind) {
    case Kind::Gn: {
      std::ostringstream ss;
      ss << "gn-zout" << gn_z_out;
      return ss.str();
    }
    case Kind::Karate: return "karate";
    case Kind::Football: return "football";
    case Kind::LfrFile: return "lfr-file";
    case Kind::EdgeList: return "edge-list";
  }
  throw std::logic_error("DatasetSpec::name: unknown kind");
}

Graph load_dataset(const DatasetSpec& ds, std::uint64_t graph_seed) {
  switch (ds.kind) {
    case DatasetSpec::Kind::Gn: {
      GnConfig cfg;
      cfg.z_out = ds.gn_z_out;
      cfg.seed = graph_seed;
      return generate_gn(cfg);
    }
    case DatasetSpec::Kind::Karate: {
      Graph g = load_edge_list_file(ds.data_dir / "karate.edges", Indexing::Zero);
      g.labels = load_labels_file(ds.data_dir / "karate.labels", Indexing::Zero, g.n);
      return g;
    }
    case DatasetSpec::Kind::Football: {
      Graph g = load_edge_list_file(ds.data_dir / "football.edges", Indexing::Zero);
      g.labels = load_labels_file(ds.data_dir / "football.labels", Indexing::Zero, g.n);
      return g;
    }
    case DatasetSpec::Kind::LfrFile:
    case DatasetSpec::Kind::EdgeList: {
      Graph g = load_edge_list_file(ds.edges_path, ds.indexing);
      if (!ds.labels_path.empty()) {
        g.labels = load_labels_file(ds.labels_path, ds.indexing, g.n);
      }
      return g;
    }
  }
  throw std::logic_error("load_dataset: unknown kind");
}

namespace {

TrialOutcome run_cell(const ExperimentConfig& cfg, Model model, double fraction,
                      std::uint64_t trial_seed, int trial_index, const ConstraintSet* replay) {
  const auto start = std::chrono::steady_clock::now();

  const Graph g = load_dataset(cfg.dataset, derive_seed(trial_seed, {kGraphStream}));
  const Eigen::MatrixXd a1 = adjacency_a1(g);

  TrialOutcome out;
  if (replay) {
    out.constraints = *replay;
    fraction = g.has_labels() && out.constraints.size() > 0
                   ? static_cast<double>(out.constraints.size()) /
                         static_cast<double>(pair_universe_size(g.labels.size()))
                   : 0.0;
  } else {
    out.constraints =
        sample_for_trial(cfg, g, fraction, derive_seed(trial_seed, {kConstraintStream}), a1);
  }
  const Eigen::MatrixXd b = encode_b(a1, out.constraints, EncodingConfig{.alpha = cfg.alpha});

  Eigen::MatrixXd x;
  if (cfg.objective == ObjectiveMatrix::Sk) {
    if (model == Model::Spectral) {
      throw std::invalid_argument("the sk objective applies to NMF models only");
    }
    x = similarity_sk(diffusion_kernel(opposite_laplacian(g)));
  } else {
    x = b;
  }

  out.partition = run_model(model, x, cfg.k, cfg.iter, derive_seed(trial_seed, {kSolverStream}),
                            cfg.paper_literal_normalization);

  TrialRow& row = out.row;
  row.dataset = cfg.dataset.name();
  row.model = model_name(model);
  row.fraction = fraction;
  row.trial = trial_index;
  row.seed = trial_seed;
  row.q = modularity_q(g, out.partition);
  if (g.has_labels()) {
    std::vector<int> truth, computed;
    restrict_to_labeled(g, out.partition, truth, computed);
    row.nmi = nmi(truth, computed);
    // Accuracy needs a label matching, which is only defined up to 12
    // computed communities; past that the column stays empty.
    std::set<int> distinct(computed.begin(), computed.end());
    row.accuracy = distinct.size() <= 12 ? matched_accuracy(truth, computed) : std::nan("");
  } else {
    row.nmi = std::nan("");
    row.accuracy = std::nan("");
  }
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

TrialRow run_trial(const ExperimentConfig& cfg, Model model, double fraction,
                   std::uint64_t trial_seed, int trial_index) {
  return run_cell(cfg, model, fraction, trial_seed, trial_index, nullptr).row;
}

TrialOutcome run_trial_detailed(const ExperimentConfig& cfg, Model model, double fraction,
                                std::uint64_t trial_seed, int trial_index) {
  return run_cell(cfg, model, fraction, trial_seed, trial_index, nullptr);
}

TrialOutcome run_trial_with_constraints(const ExperimentConfig& cfg, Model model,
                                        const ConstraintSet& cs, std::uint64_t trial_seed) {
  return run_cell(cfg, model, 0.0, trial_seed, 0, &cs);
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_sweep: trials must be at least 1");
  if (cfg.models.empty()) throw std::invalid_argument("run_sweep: no models selected");
  for (double f : cfg.fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument("run_sweep: fractions must lie in [0, 1]");
    }
  }

  SweepResult result;
  result.rows.reserve(cfg.models.size() * cfg.fractions.size() * cfg.trials);
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
      for (int ti = 0; ti < cfg.trials; ++ti) {
        const std::uint64_t seed =
            derive_seed(cfg.master_seed, {mi, fi, static_cast<std::uint64_t>(ti)});
        try {
          result.rows.push_back(run_trial(cfg, cfg.models[mi], cfg.fractions[fi], seed, ti));
        } catch (const std::exception& e) {
          throw std::runtime_error("sweep cell (model=" + model_name(cfg.models[mi]) +
                                   ", fraction=" + format_double(cfg.fractions[fi], "%g") +
                                   ", trial=" + std::to_string(ti) + "): " + e.what());
        }
      }
    }
  }
  return result;
}

namespace {

struct MeanRow {
  TrialRow row;  // trial field unused; emitted with trial = "mean"
};

// Means grouped per (model, fraction) in first-appearance order.
std::vector<MeanRow> mean_rows(const SweepResult& r) {
  std::vector<std::pair<std::string, double>> order;
  std::map<std::pair<std::string, double>, std::vector<const TrialRow*>> groups;
  for (const TrialRow& row : r.rows) {
    const auto key = std::make_pair(row.model, row.fraction);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(&row);
  }
  std::vector<MeanRow> means;
  means.reserve(order.size());
  for (const auto& key : order) {
    const auto& rows = groups.at(key);
    MeanRow m;
    m.row.dataset = rows.front()->dataset;
    m.row.model = key.first;
    m.row.fraction = key.second;
    double nmi_sum = 0.0, q_sum = 0.0, acc_sum = 0.0, wall_sum = 0.0;
    for (const TrialRow* row : rows) {
      nmi_sum += row->nmi;
      q_sum += row->q;
      acc_sum += row->accuracy;
      wall_sum += row->wall_time;
    }
    const auto count = static_cast<double>(rows.size());
    m.row.nmi = nmi_sum / count;
    m.row.q = q_sum / count;
    m.row.accuracy = acc_sum / count;
    m.row.wall_time = wall_sum / count;
    means.push_back(std::move(m));
  }
  return means;
}

nlohmann::ordered_json row_to_json(const TrialRow& row, bool is_mean, TimingMode timing) {
  nlohmann::ordered_json j;
  j["dataset"] = row.dataset;
  j["model"] = row.model;
  j["fraction"] = row.fraction;
  if (is_mean) {
    j["trial"] = "mean";
    j["seed"] = nullptr;
  } else {
    j["trial"] = row.trial;
    j["seed"] = row.seed;
  }
  auto real_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v);
  };
  j["nmi"] = real_or_null(row.nmi);
  j["q"] = real_or_null(row.q);
  j["accuracy"] = real_or_null(row.accuracy);
  j["wall_time"] = timing == TimingMode::Recorded ? row.wall_time : 0.0;
  return j;
}

}  // namespace

std::string emit_results(const SweepResult& r, OutputFormat format, TimingMode timing) {
  const std::vector<MeanRow> means = mean_rows(r);

  if (format == OutputFormat::Csv) {
    std::string out = "dataset,model,fraction,trial,seed,nmi,q,accuracy,wall_time\n";
    auto append = [&out, timing](const TrialRow& row, bool is_mean) {
      out += row.dataset;
      out += ',';
      out += row.model;
      out += ',';
      out += format_double(row.fraction, "%g");
      out += ',';
      out += is_mean ? "mean" : std::to_string(row.trial);
      out += ',';
      out += is_mean ? "" : std::to_string(row.seed);
      out += ',';
      out += format_double(row.nmi, "%.6f");
      out += ',';
      out += format_double(row.q, "%.6f");
      out += ',';
      out += format_double(row.accuracy, "%.6f");
      out += ',';
      out += format_double(timing == TimingMode::Recorded ? row.wall_time : 0.0, "%.6f");
      out += '\n';
    };
    for (const TrialRow& row : r.rows) append(row, false);
    for (const MeanRow& m : means) append(m.row, true);
    return out;
  }

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const TrialRow& row : r.rows) rows.push_back(row_to_json(row, false, timing));
  for (const MeanRow& m : means) rows.push_back(row_to_json(m.row, true, timing));
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

SweepResult parse_results_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  SweepResult r;
  for (const auto& j : doc.at("rows")) {
    if (j.at("trial").is_string()) continue;  // mean rows are derived, skip
    TrialRow row;
    row.dataset = j.at("dataset").get<std::string>();
    row.model = j.at("model").get<std::string>();
    row.fraction = j.at("fraction").get<double>();
    row.trial = j.at("trial").get<int>();
    row.seed = j.at("seed").get<std::uint64_t>();
    auto real_or_nan = [&j](const char* key) {
      return j.at(key).is_null() ? std::nan("") : j.at(key).get<double>();
    };
    row.nmi = real_or_nan("nmi");
    row.q = real_or_nan("q");
    row.accuracy = real_or_nan("accuracy");
    row.wall_time = j.at("wall_time").get<double>();
    r.rows.push_back(std::move(row));
  }
  return r;
}

FootballCaseReport football_case_study(const FootballCaseConfig& cfg) {
  DatasetSpec ds;
  ds.kind = DatasetSpec::Kind::Football;
  ds.data_dir = cfg.data_dir;
  const Graph g = load_dataset(ds, 0);
  const Eigen::MatrixXd a1 = adjacency_a1(g);

  FootballCaseReport report;
  const ModelRunner runner = [&](int k, std::uint64_t seed) {
    NmfConfig nmf_cfg{.k = k, .iter = cfg.iter, .seed = seed, .variant = NmfVariant::Lse};
    return assign_partition(nmf_lse(a1, nmf_cfg).g);
  };
  report.k_selection = select_k_by_q(g, runner, cfg.k_range, cfg.trials,
                                     derive_seed(cfg.seed, {0}));
  report.k_used = report.k_selection.k_best;

  // Node ids of the labeled teams in ascending order; matched_mismatches
  // returns positions into this vector.
  std::vector<int> labeled_nodes;
  for (const auto& [node, community] : g.labels) labeled_nodes.push_back(node);

  for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
    const double fraction = cfg.fractions[fi];
    FootballCaseReport::FractionOutcome outcome;
    outcome.fraction = fraction;
    double mis_sum = 0.0, nmi_sum = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed =
          derive_seed(cfg.seed, {1, fi, static_cast<std::uint64_t>(trial)});
      ConstraintSet cs;
      if (fraction > 0.0) {
        cs = sample_random_constraints(g.labels, fraction, derive_seed(seed, {kConstraintStream}));
      }
      const Eigen::MatrixXd b = encode_b(a1, cs, EncodingConfig{.alpha = cfg.alpha});
      FactorPair best;
      for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
        NmfConfig nmf_cfg{.k = report.k_used, .iter = cfg.iter,
                          .seed = derive_seed(seed, {kSolverStream, static_cast<std::uint64_t>(r)}),
                          .variant = NmfVariant::Lse};
        FactorPair fp = nmf_lse(b, nmf_cfg);
        if (r == 0 || fp.objective_trace.back() < best.objective_trace.back()) {
          best = std::move(fp);
        }
      }
      const Partition p = assign_partition(best.g);

      std::vector<int> truth, computed;
      restrict_to_labeled(g, p, truth, computed);
      const std::vector<int> mism = matched_mismatches(truth, computed);
      mis_sum += static_cast<double>(mism.size());
      nmi_sum += nmi(truth, computed);
      for (int pos : mism) ++outcome.miscluster_counts[labeled_nodes[pos]];
    }
    outcome.mean_misclustered = mis_sum / cfg.trials;
    outcome.mean_nmi = nmi_sum / cfg.trials;
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

std::string format_football_report(const FootballCaseReport& report) {
  std::ostringstream out;
  out << "modularity-based k selection (nmf-lse):\n";
  for (const auto& [k, q] : report.k_selection.mean_q_by_k) {
    out << "  k=" << k << "  mean Q=" << format_double(q, "%.4f")
        << (k == report.k_selection.k_best ? "  <-- selected" : "") << "\n";
  }
  out << "constraint sweeps at k=" << report.k_used << ":\n";
  for (const auto& outcome : report.outcomes) {
    out << "  fraction=" << format_double(outcome.fraction, "%g")
        << "  mean mis-clustered teams=" << format_double(outcome.mean_misclustered, "%.2f")
        << "  mean NMI=" << format_double(outcome.mean_nmi, "%.4f") << "\n";
    out << "    mis-clustered (team id x trials): ";
    if (outcome.miscluster_counts.empty()) {
      out << "none";
    } else {
      bool first = true;
      for (const auto& [team, count] : outcome.miscluster_counts) {
        if (!first) out << ", ";
        out << team << "x" << count;
        first = false;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sscd
