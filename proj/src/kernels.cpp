#include "sscd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace sscd {

Eigen::MatrixXd opposite_laplacian(const Graph& g) {
  Eigen::MatrixXd l = adjacency_a0(g);
  const auto deg = g.degrees();
  for (int i = 0; i < g.n; ++i) l(i, i) = -static_cast<double>(deg[i]);
  return l;
}

Eigen::MatrixXd diffusion_kernel(const Eigen::MatrixXd& l, const KernelConfig& cfg) {
  if (l.rows() != l.cols()) throw std::invalid_argument("diffusion_kernel: matrix must be square");
  if (!l.isApprox(l.transpose())) {
    throw std::invalid_argument("diffusion_kernel: matrix must be symmetric");
  }
  if (!(cfg.beta > 0.0)) throw std::invalid_argument("diffusion_kernel: beta must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("diffusion_kernel: eigendecomposition failed");
  }
  const Eigen::VectorXd w = (cfg.beta * es.eigenvalues().array()).exp();
  Eigen::MatrixXd k = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
  // V exp(bL) V^T is symmetric only up to roundoff once multiplied out.
  k = ((k + k.transpose()) / 2.0).eval();
  return k;
}

Eigen::MatrixXd similarity_sk(const Eigen::MatrixXd& k) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw std::invalid_argument("similarity_sk: matrix must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(k(i, i) > 0.0)) {
      throw std::invalid_argument("similarity_sk: nonpositive diagonal entry at " +
                                  std::to_string(i));
    }
  }
  Eigen::MatrixXd sk = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd root = k.diagonal().cwiseSqrt();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = k(i, j) / (root(i) * root(j));
      sk(i, j) = v;
      sk(j, i) = v;
    }
  }
  return sk;
}

}  // namespace sscd
