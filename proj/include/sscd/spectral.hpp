#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sscd/partition.hpp"

namespace sscd {

struct SpectralConfig {
  int k = 2;
  int kmeans_restarts = 10;
  int kmeans_max_iters = 100;
  std::uint64_t seed = 0;
  // Normalise with D^{+1/2} B D^{+1/2} instead of the standard D^{-1/2} form.
  // Kept selectable for comparison; the positive exponents make the leading
  // eigenvectors degree-dominated, so this is off by default.
  bool paper_literal_normalization = false;
};

struct SpectralResult {
  Partition partition;
  Eigen::VectorXd eigenvalues;  // the k largest, descending
  Eigen::MatrixXd embedding;    // n x k, rows L2-normalised (zero rows stay zero)
};

// Normalised spectral clustering: D^{-1/2} B D^{-1/2}, top-k eigenvectors,
// row normalisation, k-means on the embedded rows. Zero-degree rows get a
// zero embedding row. Eigenvector sign is fixed so the first entry above
// 1e-12 in magnitude is positive.
SpectralResult spectral_cluster_detailed(const Eigen::MatrixXd& b, const SpectralConfig& cfg);
Partition spectral_cluster(const Eigen::MatrixXd& b, const SpectralConfig& cfg);

struct KmeansResult {
  std::vector<int> labels;
  double wcss = 0.0;
  std::vector<double> wcss_trace;  // per Lloyd iteration of the winning restart
};

// Best-of-restarts Lloyd with k-means++ seeding. Within a run, iterations
// stop at an assignment fixpoint or max_iters. Assignment ties break toward
// the lowest cluster index; an emptied cluster is repaired by moving the
// point farthest from its centroid, unless every distance is zero. Winner is
// the lowest WCSS, ties to the earlier restart.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts = 10,
                    int max_iters = 100);

}  // namespace sscd
