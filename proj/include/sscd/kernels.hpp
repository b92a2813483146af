#pragma once

#include <Eigen/Dense>

#include "sscd/graph.hpp"

namespace sscd {

struct KernelConfig {
  double beta = 0.2;  // diffusion rate
};

// Opposite Laplacian: L_ij = 1 on edges, L_ii = -degree(i), 0 elsewhere.
// Rows sum to zero.
Eigen::MatrixXd opposite_laplacian(const Graph& g);

// Heat kernel K = expm(beta * L), computed through a symmetric
// eigendecomposition: K = V exp(beta * Lambda) V^T. Symmetric positive
// definite for any symmetric L.
Eigen::MatrixXd diffusion_kernel(const Eigen::MatrixXd& l, const KernelConfig& cfg = {});

// Correlation-style normalisation SK_ij = K_ij / sqrt(K_ii K_jj); the
// diagonal is exactly 1 and |SK_ij| <= 1 for positive semidefinite K.
Eigen::MatrixXd similarity_sk(const Eigen::MatrixXd& k);

}  // namespace sscd
