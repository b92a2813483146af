#include "sscd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sscd/rng.hpp"

namespace sscd {
namespace {

std::vector<int> recode(const std::vector<int>& labels) {
  std::map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int v : labels) {
    auto [it, fresh] = ids.try_emplace(v, static_cast<int>(ids.size()));
    (void)fresh;
    out.push_back(it->second);
  }
  return out;
}

// Best injective matching of columns (computed groups) onto rows (truth
// groups), returning the total agreement count. Exact via subset DP when both
// sides fit in 8 groups, greedy best-first otherwise.
long best_matching_agreement(const ContingencyTable& t,
                             std::vector<int>* col_to_row /*optional, -1 = unmatched*/) {
  const int rows = static_cast<int>(t.row_sums.size());
  const int cols = static_cast<int>(t.col_sums.size());

  if (rows <= 8 && cols <= 8) {
    // dp over columns with a bitmask of used rows; dp value = best agreement.
    const int full = 1 << rows;
    std::vector<std::vector<long>> dp(cols + 1, std::vector<long>(full, -1));
    dp[0].assign(full, 0);
    for (int c = 0; c < cols; ++c) {
      for (int mask = 0; mask < full; ++mask) {
        if (dp[c][mask] < 0) continue;
        // leave column c unmatched
        dp[c + 1][mask] = std::max(dp[c + 1][mask], dp[c][mask]);
        for (int r = 0; r < rows; ++r) {
          if (mask & (1 << r)) continue;
          const int nm = mask | (1 << r);
          dp[c + 1][nm] = std::max(dp[c + 1][nm], dp[c][mask] + t.counts(r, c));
        }
      }
    }
    long best = 0;
    int best_mask = 0;
    for (int mask = 0; mask < full; ++mask) {
      if (dp[cols][mask] > best) {
        best = dp[cols][mask];
        best_mask = mask;
      }
    }
    if (col_to_row) {
      // Walk the dp back to recover one optimal assignment.
      col_to_row->assign(cols, -1);
      int mask = best_mask;
      long value = best;
      for (int c = cols - 1; c >= 0; --c) {
        if (dp[c][mask] == value) continue;  // column c unmatched
        int chosen = -1;
        for (int r = 0; r < rows; ++r) {
          if (!(mask & (1 << r))) continue;
          const int prev = mask & ~(1 << r);
          if (dp[c][prev] == value - t.counts(r, c)) {
            chosen = r;
            break;
          }
        }
        (*col_to_row)[c] = chosen;
        mask &= ~(1 << chosen);
        value -= t.counts(chosen, c);
      }
    }
    return best;
  }

  // Greedy: repeatedly take the largest remaining cell with both sides free.
  struct Cell {
    int count, r, c;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) cells.push_back({t.counts(r, c), r, c});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.count != b.count) return a.count > b.count;
    return std::tie(a.r, a.c) < std::tie(b.r, b.c);
  });
  std::vector<char> row_used(rows, 0), col_used(cols, 0);
  std::vector<int> assign(cols, -1);
  long agree = 0;
  for (const Cell& cell : cells) {
    if (row_used[cell.r] || col_used[cell.c]) continue;
    row_used[cell.r] = 1;
    col_used[cell.c] = 1;
    assign[cell.c] = cell.r;
    agree += cell.count;
  }
  if (col_to_row) *col_to_row = std::move(assign);
  return agree;
}

void check_aligned(const std::vector<int>& a, const std::vector<int>& b, const char* who) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument(std::string(who) + ": labelings must cover the same nonempty node set");
  }
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(const std::vector<int>& a,
                                               const std::vector<int>& b) {
  check_aligned(a, b, "contingency");
  const std::vector<int> ra = recode(a);
  const std::vector<int> rb = recode(b);
  const int ka = 1 + *std::max_element(ra.begin(), ra.end());
  const int kb = 1 + *std::max_element(rb.begin(), rb.end());

  ContingencyTable t;
  t.counts = Eigen::MatrixXi::Zero(ka, kb);
  t.row_sums.assign(ka, 0);
  t.col_sums.assign(kb, 0);
  t.total = static_cast<int>(a.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ++t.counts(ra[i], rb[i]);
    ++t.row_sums[ra[i]];
    ++t.col_sums[rb[i]];
  }
  return t;
}

double nmi(const std::vector<int>& truth, const std::vector<int>& computed) {
  check_aligned(truth, computed, "nmi");
  const ContingencyTable t = ContingencyTable::from_labels(truth, computed);
  const int ka = static_cast<int>(t.row_sums.size());
  const int kb = static_cast<int>(t.col_sums.size());
  if (ka == 1 && kb == 1) return 1.0;  // identical single-community partitions
  if (ka == 1 || kb == 1) return 0.0;  // degenerate denominator factor

  const double n = t.total;
  double num = 0.0;
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      const int nij = t.counts(i, j);
      if (nij == 0) continue;
      num += nij * std::log(nij * n / (static_cast<double>(t.row_sums[i]) * t.col_sums[j]));
    }
  }
  double den_a = 0.0, den_b = 0.0;
  for (int i = 0; i < ka; ++i) den_a += t.row_sums[i] * std::log(t.row_sums[i] / n);
  for (int j = 0; j < kb; ++j) den_b += t.col_sums[j] * std::log(t.col_sums[j] / n);
  return num / std::sqrt(den_a * den_b);
}

double modularity_q(const Graph& g, const Partition& p) {
  if (static_cast<int>(p.labels.size()) != g.n) {
    throw std::invalid_argument("modularity_q: partition must cover all nodes");
  }
  if (g.edges.empty()) {
    throw std::invalid_argument("modularity_q: undefined on an edgeless graph");
  }
  const int k = p.k > 0 ? p.k : 1 + *std::max_element(p.labels.begin(), p.labels.end());
  for (int label : p.labels) {
    if (label < 0 || label >= k) {
      throw std::invalid_argument("modularity_q: label " + std::to_string(label) +
                                  " outside 0.." + std::to_string(k - 1));
    }
  }

  // L(C,C) counts each internal edge twice; L(C,V) is the degree sum.
  std::vector<double> internal2(k, 0.0), degree(k, 0.0);
  for (auto [u, v] : g.edges) {
    if (p.labels[u] == p.labels[v]) internal2[p.labels[u]] += 2.0;
    degree[p.labels[u]] += 1.0;
    degree[p.labels[v]] += 1.0;
  }
  const double l_vv = 2.0 * static_cast<double>(g.edges.size());
  double q = 0.0;
  for (int c = 0; c < k; ++c) {
    const double frac = degree[c] / l_vv;
    q += internal2[c] / l_vv - frac * frac;
  }
  return q;
}

double matched_accuracy(const std::vector<int>& truth, const std::vector<int>& computed) {
  check_aligned(truth, computed, "matched_accuracy");
  const ContingencyTable t = ContingencyTable::from_labels(truth, computed);
  if (t.col_sums.size() > 12) {
    throw std::invalid_argument("matched_accuracy: more than 12 computed communities");
  }
  const long agree = best_matching_agreement(t, nullptr);
  return static_cast<double>(agree) / t.total;
}

std::vector<int> matched_mismatches(const std::vector<int>& truth,
                                    const std::vector<int>& computed) {
  check_aligned(truth, computed, "matched_mismatches");
  const ContingencyTable t = ContingencyTable::from_labels(truth, computed);
  if (t.col_sums.size() > 12) {
    throw std::invalid_argument("matched_mismatches: more than 12 computed communities");
  }
  std::vector<int> col_to_row;
  best_matching_agreement(t, &col_to_row);

  const std::vector<int> rt = recode(truth);
  const std::vector<int> rc = recode(computed);
  std::vector<int> out;
  for (std::size_t i = 0; i < rt.size(); ++i) {
    if (col_to_row[rc[i]] != rt[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

KSelection select_k_by_q(const Graph& g, const ModelRunner& model, const std::vector<int>& k_range,
                         int trials, std::uint64_t seed) {
  if (k_range.empty()) throw std::invalid_argument("select_k_by_q: empty k range");
  if (trials < 1) throw std::invalid_argument("select_k_by_q: trials must be at least 1");

  KSelection sel;
  bool have_best = false;
  double best_q = 0.0;
  for (std::size_t ki = 0; ki < k_range.size(); ++ki) {
    const int k = k_range[ki];
    double sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const Partition p =
          model(k, derive_seed(seed, {static_cast<std::uint64_t>(ki), static_cast<std::uint64_t>(trial)}));
      sum += modularity_q(g, p);
    }
    const double mean = sum / trials;
    sel.mean_q_by_k.emplace_back(k, mean);
    if (!have_best || mean > best_q || (mean == best_q && k < sel.k_best)) {
      best_q = mean;
      sel.k_best = k;
      have_best = true;
    }
  }
  return sel;
}

}  // namespace sscd
