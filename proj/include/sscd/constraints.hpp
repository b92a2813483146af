#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sscd {

// Pairwise supervision: must-link pairs are asserted to share a community,
// cannot-link pairs to be separated. Pairs are normalised to (u, v) with
// u < v; the two sets must be disjoint and never contain (i, i).
struct ConstraintSet {
  std::vector<std::pair<int, int>> must_link;
  std::vector<std::pair<int, int>> cannot_link;

  bool empty() const { return must_link.empty() && cannot_link.empty(); }
  std::size_t size() const { return must_link.size() + cannot_link.size(); }
};

struct EncodingConfig {
  double alpha = 2.0;  // weight written at must-link entries
};

// Writes the constraints into A1: B_ij = B_ji = alpha on must-link pairs, 0 on
// cannot-link pairs, A1_ij otherwise. With alpha = 1 and every pair
// constrained from true labels this is exactly the consensus matrix.
Eigen::MatrixXd encode_b(const Eigen::MatrixXd& a1, const ConstraintSet& cs,
                         const EncodingConfig& cfg = {});

// Number of unordered pairs over `labeled` nodes.
inline std::size_t pair_universe_size(std::size_t labeled) {
  return labeled * (labeled - 1) / 2;
}

// Samples floor(fraction * universe) pairs uniformly without replacement from
// the unordered pairs of labeled nodes, then classifies each from the labels:
// same community -> must-link, different -> cannot-link.
ConstraintSet sample_random_constraints(const std::map<int, int>& labels, double fraction,
                                        std::uint64_t seed);

// Rule-based selection over Hamming distances between rows of A1: picks
// count/2 pairs with the largest distances and count/2 with the smallest,
// restricted to labeled nodes, then classifies each pair from the labels.
// Exact distance ties are ordered lexicographically and shuffled per seed.
ConstraintSet sample_rule_based_constraints(const Eigen::MatrixXd& a1,
                                            const std::map<int, int>& labels, int count,
                                            std::uint64_t seed);

// Count of positions where the two rows differ.
template <typename DerivedA, typename DerivedB>
int hamming_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  int d = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.derived()(i) != b.derived()(i)) ++d;
  }
  return d;
}

// Audit format: one "i j ML" or "i j CL" line per pair, 0-indexed.
std::string emit_constraints(const ConstraintSet& cs);
ConstraintSet parse_constraints(const std::string& text);

}  // namespace sscd
