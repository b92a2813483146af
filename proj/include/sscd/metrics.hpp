#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sscd/graph.hpp"
#include "sscd/partition.hpp"

namespace sscd {

// Cross-tabulation of two labelings over the same nodes. Group ids on each
// side are recoded by first appearance, so arbitrary label values are fine.
struct ContingencyTable {
  Eigen::MatrixXi counts;  // rows: first labeling, cols: second
  std::vector<int> row_sums;
  std::vector<int> col_sums;
  int total = 0;

  static ContingencyTable from_labels(const std::vector<int>& a, const std::vector<int>& b);
};

// Normalised mutual information with natural logs,
//   NMI = sum_ij n_ij log(n_ij n / (n_i n_j)) /
//         sqrt( (sum_i n_i log(n_i/n)) (sum_j n_j log(n_j/n)) ).
// Zero cells contribute nothing. If either labeling is a single community the
// denominator degenerates: the result is 1 when both sides are single
// communities (identical partitions) and 0 otherwise.
double nmi(const std::vector<int>& truth, const std::vector<int>& computed);

// Newman modularity over the raw adjacency A0 — never over a
// constraint-modified matrix — so quality is judged on the actual topology:
//   Q = sum_C [ L(C,C)/L(V,V) - (L(C,V)/L(V,V))^2 ],  L(V1,V2) = sum a_ij.
// Undefined (error) on edgeless graphs.
double modularity_q(const Graph& g, const Partition& p);

// Fraction of nodes that agree after the best injective mapping of computed
// communities onto truth communities. Exact (assignment DP) when both sides
// have at most 8 groups, greedy best-first above that; the computed side may
// have at most 12 groups.
double matched_accuracy(const std::vector<int>& truth, const std::vector<int>& computed);

// Positions left unmatched by the same mapping (the "mis-clustered" nodes).
std::vector<int> matched_mismatches(const std::vector<int>& truth,
                                    const std::vector<int>& computed);

using ModelRunner = std::function<Partition(int k, std::uint64_t seed)>;

struct KSelection {
  int k_best = 0;
  std::vector<std::pair<int, double>> mean_q_by_k;
};

// Runs the model `trials` times per k (seeds derived from `seed`), averages
// modularity on g, and returns the argmax; ties go to the smallest k.
KSelection select_k_by_q(const Graph& g, const ModelRunner& model, const std::vector<int>& k_range,
                         int trials, std::uint64_t seed);

}  // namespace sscd
