#include "sscd/nmf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sscd/rng.hpp"

namespace sscd {
namespace {

void validate_config(const NmfConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("nmf: k must be at least 1");
  if (cfg.iter < 1) throw std::invalid_argument("nmf: iter must be at least 1");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("nmf: epsilon must be positive");
}

void validate_nonnegative(const Eigen::MatrixXd& x, const char* who) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (x(i, j) < 0.0) {
        throw std::invalid_argument(std::string(who) + ": negative entry at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

// Strictly positive i.i.d. uniform (0, 1] entries, filled column-major so a
// seed pins the factors bit-for-bit.
Eigen::MatrixXd positive_init(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = uniform_positive_unit(rng);
  }
  return m;
}

double kl_divergence(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  double d = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double xij = x(i, j);
      const double yij = std::max(y(i, j), 1e-300);
      if (xij > 0.0) d += xij * std::log(xij / yij) - xij + y(i, j);
      else d += y(i, j);  // 0 log 0 := 0 leaves only the reconstruction term
    }
  }
  return d;
}

}  // namespace

FactorPair nmf_lse(const Eigen::MatrixXd& x, const NmfConfig& cfg) {
  validate_config(cfg);
  validate_nonnegative(x, "nmf_lse");
  const double eps = cfg.epsilon;

  Rng rng(cfg.seed);
  FactorPair out;
  out.f = positive_init(x.rows(), cfg.k, rng);
  out.g = positive_init(x.cols(), cfg.k, rng);
  out.objective_trace.reserve(cfg.iter + 1);
  out.objective_trace.push_back((x - out.f * out.g.transpose()).squaredNorm());

  for (int t = 0; t < cfg.iter; ++t) {
    {
      const Eigen::MatrixXd num = x * out.g;
      const Eigen::MatrixXd den = out.f * (out.g.transpose() * out.g);
      out.f.array() *= num.array() / (den.array() + eps);
    }
    {
      const Eigen::MatrixXd num = x.transpose() * out.f;
      const Eigen::MatrixXd den = out.g * (out.f.transpose() * out.f);
      out.g.array() *= num.array() / (den.array() + eps);
    }
    out.objective_trace.push_back((x - out.f * out.g.transpose()).squaredNorm());
  }
  return out;
}

FactorPair nmf_kl(const Eigen::MatrixXd& x, const NmfConfig& cfg) {
  validate_config(cfg);
  validate_nonnegative(x, "nmf_kl");
  const double eps = cfg.epsilon;

  Rng rng(cfg.seed);
  FactorPair out;
  out.f = positive_init(x.rows(), cfg.k, rng);
  out.g = positive_init(x.cols(), cfg.k, rng);
  out.objective_trace.reserve(cfg.iter + 1);
  out.objective_trace.push_back(kl_divergence(x, out.f * out.g.transpose()));

  for (int t = 0; t < cfg.iter; ++t) {
    {
      const Eigen::MatrixXd ratio =
          x.array() / ((out.f * out.g.transpose()).array() + eps);
      const Eigen::RowVectorXd scale = 1.0 / (out.g.colwise().sum().array() + eps);
      const Eigen::MatrixXd num = ratio * out.g;
      out.f.array() *= num.array().rowwise() * scale.array();
    }
    {
      const Eigen::MatrixXd ratio =
          x.array() / ((out.f * out.g.transpose()).array() + eps);
      const Eigen::RowVectorXd scale = 1.0 / (out.f.colwise().sum().array() + eps);
      const Eigen::MatrixXd num = ratio.transpose() * out.f;
      out.g.array() *= num.array().rowwise() * scale.array();
    }
    out.objective_trace.push_back(kl_divergence(x, out.f * out.g.transpose()));
  }
  return out;
}

FactorPair snmf(const Eigen::MatrixXd& x, const NmfConfig& cfg) {
  validate_config(cfg);
  if (x.rows() != x.cols()) throw std::invalid_argument("snmf: matrix must be square");
  if (!x.isApprox(x.transpose())) throw std::invalid_argument("snmf: matrix must be symmetric");
  validate_nonnegative(x, "snmf");
  const double eps = cfg.epsilon;

  Rng rng(cfg.seed);
  FactorPair out;
  out.g = positive_init(x.rows(), cfg.k, rng);
  // A dense i.i.d. S couples the columns of G: every iteration then mixes the
  // column space like a power-iteration step and the factors collapse onto
  // the dominant block. Starting S diagonally dominant (with small strictly
  // positive off-diagonals, so the full parametrization stays reachable)
  // keeps the columns identifiable.
  out.s = 0.1 * positive_init(cfg.k, cfg.k, rng) +
          Eigen::MatrixXd::Identity(cfg.k, cfg.k);
  out.objective_trace.reserve(cfg.iter + 1);
  out.objective_trace.push_back((x - out.g * out.s * out.g.transpose()).squaredNorm());

  for (int t = 0; t < cfg.iter; ++t) {
    {
      const Eigen::MatrixXd num = x * out.g * out.s;
      const Eigen::MatrixXd den = out.g * out.s * (out.g.transpose() * out.g) * out.s;
      out.g.array() *= num.array() / (den.array() + eps);
    }
    {
      const Eigen::MatrixXd gtg = out.g.transpose() * out.g;
      const Eigen::MatrixXd num = out.g.transpose() * x * out.g;
      const Eigen::MatrixXd den = gtg * out.s * gtg;
      out.s.array() *= num.array() / (den.array() + eps);
    }
    out.objective_trace.push_back((x - out.g * out.s * out.g.transpose()).squaredNorm());
  }
  return out;
}

FactorPair run_nmf(const Eigen::MatrixXd& x, const NmfConfig& cfg) {
  switch (cfg.variant) {
    case NmfVariant::Lse: return nmf_lse(x, cfg);
    case NmfVariant::Kl: return nmf_kl(x, cfg);
    case NmfVariant::Snmf: return snmf(x, cfg);
  }
  throw std::logic_error("run_nmf: unknown variant");
}

Partition assign_partition(const Eigen::MatrixXd& g) {
  Partition p;
  p.k = static_cast<int>(g.cols());
  p.labels.resize(g.rows());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    int best = 0;
    for (Eigen::Index j = 1; j < g.cols(); ++j) {
      if (g(i, j) > g(i, best)) best = static_cast<int>(j);
    }
    p.labels[i] = best;
  }
  return p;
}

}  // namespace sscd
