#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sscd/partition.hpp"

namespace sscd {

enum class NmfVariant { Lse, Kl, Snmf };

struct NmfConfig {
  int k = 2;                // factor rank / community count
  int iter = 100;           // fixed iteration budget, no convergence test
  std::uint64_t seed = 0;   // factor initialisation
  double epsilon = 1e-9;    // guard added to update denominators
  NmfVariant variant = NmfVariant::Lse;
};

// Factors of X ~ F G^T (or X ~ G S G^T for the symmetric variant, where F is
// left empty). objective_trace[0] is the objective at initialisation and one
// entry follows per iteration.
struct FactorPair {
  Eigen::MatrixXd f;  // n x k
  Eigen::MatrixXd g;  // m x k
  Eigen::MatrixXd s;  // k x k, symmetric variant only
  std::vector<double> objective_trace;
};

// Multiplicative updates for || X - F G^T ||_F^2:
//   F <- F .* (X G) ./ (F G^T G + eps)
//   G <- G .* (X^T F) ./ (G F^T F + eps)
// F updates first; the G update uses the fresh F. The objective is
// nonincreasing under this sequencing.
FactorPair nmf_lse(const Eigen::MatrixXd& x, const NmfConfig& cfg);

// Multiplicative updates for the divergence
// sum_ij [ X log(X / FG^T) - X + FG^T ] with 0 log 0 = 0:
//   F_ik <- F_ik / sum_j G_jk * sum_j X_ij / (F G^T)_ij * G_jk
// and symmetrically for G.
FactorPair nmf_kl(const Eigen::MatrixXd& x, const NmfConfig& cfg);

// Symmetric variant for square symmetric X, objective || X - G S G^T ||_F^2:
//   G <- G .* (X G S) ./ (G S G^T G S + eps)
//   S <- S .* (G^T X G) ./ (G^T G S G^T G + eps)
FactorPair snmf(const Eigen::MatrixXd& x, const NmfConfig& cfg);

// Dispatch on cfg.variant.
FactorPair run_nmf(const Eigen::MatrixXd& x, const NmfConfig& cfg);

// Row-argmax community readout from G; ties break toward the lowest column.
Partition assign_partition(const Eigen::MatrixXd& g);

}  // namespace sscd
