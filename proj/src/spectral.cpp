#include "sscd/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sscd/rng.hpp"

namespace sscd {
namespace {

Eigen::MatrixXd kmeanspp_centroids(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());
  std::vector<char> chosen(n, 0);

  Eigen::Index first = static_cast<Eigen::Index>(uniform_below(rng, n));
  centroids.row(0) = points.row(first);
  chosen[first] = 1;

  Eigen::VectorXd d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double r = uniform_unit(rng) * total;
      double cum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        cum += d2(i);
        if (r < cum) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = n - 1;  // r landed on accumulated roundoff
    } else {
      // Degenerate: all remaining mass is zero (duplicate points). Take the
      // lowest-index point not already a centroid.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = 0;
    }
    centroids.row(c) = points.row(pick);
    chosen[pick] = 1;
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

struct RunResult {
  std::vector<int> labels;
  double wcss = 0.0;
  std::vector<double> trace;
};

RunResult lloyd_run(const Eigen::MatrixXd& points, int k, Rng& rng, int max_iters) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centroids = kmeanspp_centroids(points, k, rng);
  std::vector<int> labels(n, 0);
  RunResult run;

  for (int it = 0; it < max_iters; ++it) {
    // Assign to the nearest centroid, lowest index on ties.
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }

    // Empty-cluster repair: hand the cluster the point farthest from its
    // current centroid. All-zero distances (identical points) stay put.
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) ++counts[labels[i]];
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = -1;
      double far_d = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;  // don't empty another cluster
        const double d = (points.row(i) - centroids.row(labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far >= 0) {
        --counts[labels[far]];
        labels[far] = c;
        ++counts[c];
        centroids.row(c) = points.row(far);
        changed = true;
      }
    }

    // Recompute centroids of nonempty clusters.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < n; ++i) sums.row(labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) centroids.row(c) = sums.row(c) / counts[c];
    }

    double wcss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      wcss += (points.row(i) - centroids.row(labels[i])).squaredNorm();
    }
    run.trace.push_back(wcss);
    run.wcss = wcss;
    if (!changed) break;
  }
  run.labels = std::move(labels);
  return run;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts,
                    int max_iters) {
  if (k < 1) throw std::invalid_argument("kmeans: k must be at least 1");
  if (points.rows() < k) {
    throw std::invalid_argument("kmeans: " + std::to_string(points.rows()) +
                                " points cannot fill " + std::to_string(k) + " clusters");
  }
  if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be at least 1");

  KmeansResult best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    RunResult run = lloyd_run(points, k, rng, max_iters);
    if (!have_best || run.wcss < best.wcss) {
      best.labels = std::move(run.labels);
      best.wcss = run.wcss;
      best.wcss_trace = std::move(run.trace);
      have_best = true;
    }
  }
  return best;
}

SpectralResult spectral_cluster_detailed(const Eigen::MatrixXd& b, const SpectralConfig& cfg) {
  const Eigen::Index n = b.rows();
  if (b.cols() != n) throw std::invalid_argument("spectral_cluster: matrix must be square");
  if (!b.isApprox(b.transpose())) {
    throw std::invalid_argument("spectral_cluster: matrix must be symmetric");
  }
  if (b.size() > 0 && b.minCoeff() < -1e-9) {
    throw std::invalid_argument("spectral_cluster: matrix must be nonnegative");
  }
  if (cfg.k < 1) throw std::invalid_argument("spectral_cluster: k must be at least 1");
  if (cfg.k > n) {
    throw std::invalid_argument("spectral_cluster: k = " + std::to_string(cfg.k) +
                                " exceeds n = " + std::to_string(n));
  }

  // Degree normalisation; zero-degree rows keep a zero scale so they drop out
  // of the spectrum instead of dividing by zero.
  Eigen::VectorXd scale(n);
  const Eigen::VectorXd deg = b.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (deg(i) > 0.0) {
      scale(i) = cfg.paper_literal_normalization ? std::sqrt(deg(i)) : 1.0 / std::sqrt(deg(i));
    } else {
      scale(i) = 0.0;
    }
  }
  const Eigen::MatrixXd normalized = scale.asDiagonal() * b * scale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral_cluster: eigendecomposition failed");
  }

  SpectralResult res;
  res.eigenvalues.resize(cfg.k);
  res.embedding.resize(n, cfg.k);
  for (int j = 0; j < cfg.k; ++j) {
    const Eigen::Index src = n - 1 - j;  // solver sorts ascending
    res.eigenvalues(j) = es.eigenvalues()(src);
    Eigen::VectorXd col = es.eigenvectors().col(src);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
    res.embedding.col(j) = col;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    // A zero-degree node carries no spectral information; any weight it picks
    // up from a kernel-basis eigenvector is arbitrary, so pin its row to the
    // origin and skip normalisation there.
    if (scale(i) == 0.0) {
      res.embedding.row(i).setZero();
      continue;
    }
    const double norm = res.embedding.row(i).norm();
    if (norm > 0.0) res.embedding.row(i) /= norm;
  }

  KmeansResult km =
      kmeans(res.embedding, cfg.k, cfg.seed, cfg.kmeans_restarts, cfg.kmeans_max_iters);
  res.partition.labels = std::move(km.labels);
  res.partition.k = cfg.k;
  return res;
}

Partition spectral_cluster(const Eigen::MatrixXd& b, const SpectralConfig& cfg) {
  return spectral_cluster_detailed(b, cfg).partition;
}

}  // namespace sscd
