#include "sscd/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "sscd/rng.hpp"

namespace sscd {
namespace {

std::string pair_str(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

void check_pair_range(std::pair<int, int> p, Eigen::Index n) {
  if (p.first == p.second) {
    throw std::invalid_argument("constraint pair " + pair_str(p) + " is a self-pair");
  }
  if (p.first < 0 || p.second < 0 || p.first >= n || p.second >= n) {
    throw std::invalid_argument("constraint pair " + pair_str(p) + " out of range for n = " +
                                std::to_string(n));
  }
}

// All unordered pairs of labeled nodes in lexicographic order.
std::vector<std::pair<int, int>> labeled_pair_universe(const std::map<int, int>& labels) {
  std::vector<int> nodes;
  nodes.reserve(labels.size());
  for (const auto& [node, community] : labels) nodes.push_back(node);
  std::vector<std::pair<int, int>> universe;
  universe.reserve(pair_universe_size(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      universe.emplace_back(nodes[i], nodes[j]);
    }
  }
  return universe;
}

ConstraintSet classify_pairs(const std::vector<std::pair<int, int>>& pairs,
                             const std::map<int, int>& labels) {
  ConstraintSet cs;
  for (auto p : pairs) {
    if (labels.at(p.first) == labels.at(p.second)) {
      cs.must_link.push_back(p);
    } else {
      cs.cannot_link.push_back(p);
    }
  }
  std::sort(cs.must_link.begin(), cs.must_link.end());
  std::sort(cs.cannot_link.begin(), cs.cannot_link.end());
  return cs;
}

}  // namespace

Eigen::MatrixXd encode_b(const Eigen::MatrixXd& a1, const ConstraintSet& cs,
                         const EncodingConfig& cfg) {
  const Eigen::Index n = a1.rows();
  if (a1.cols() != n) throw std::invalid_argument("encode_b: matrix must be square");
  if (!a1.isApprox(a1.transpose())) throw std::invalid_argument("encode_b: matrix must be symmetric");
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("encode_b: alpha must be positive");

  std::set<std::pair<int, int>> ml;
  for (auto p : cs.must_link) {
    check_pair_range(p, n);
    ml.insert(std::minmax(p.first, p.second));
  }
  Eigen::MatrixXd b = a1;
  for (auto p : cs.must_link) {
    b(p.first, p.second) = cfg.alpha;
    b(p.second, p.first) = cfg.alpha;
  }
  for (auto p : cs.cannot_link) {
    check_pair_range(p, n);
    if (ml.count(std::minmax(p.first, p.second))) {
      throw std::invalid_argument("constraint conflict: pair " + pair_str(p) +
                                  " is both must-link and cannot-link");
    }
    b(p.first, p.second) = 0.0;
    b(p.second, p.first) = 0.0;
  }
  return b;
}

ConstraintSet sample_random_constraints(const std::map<int, int>& labels, double fraction,
                                        std::uint64_t seed) {
  if (labels.empty()) {
    throw std::invalid_argument("sample_random_constraints: no labeled nodes");
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("sample_random_constraints: fraction must lie in [0, 1]");
  }
  auto universe = labeled_pair_universe(labels);
  const auto m = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(universe.size())));
  Rng rng(seed);
  shuffle_prefix(universe, m, rng);
  universe.resize(m);
  return classify_pairs(universe, labels);
}

ConstraintSet sample_rule_based_constraints(const Eigen::MatrixXd& a1,
                                            const std::map<int, int>& labels, int count,
                                            std::uint64_t seed) {
  if (labels.empty()) {
    throw std::invalid_argument("sample_rule_based_constraints: no labeled nodes");
  }
  if (count < 0 || count % 2 != 0) {
    throw std::invalid_argument("sample_rule_based_constraints: count must be even, got " +
                                std::to_string(count));
  }
  auto universe = labeled_pair_universe(labels);
  if (static_cast<std::size_t>(count) > universe.size()) {
    throw std::invalid_argument("sample_rule_based_constraints: count " + std::to_string(count) +
                                " exceeds the " + std::to_string(universe.size()) + "-pair universe");
  }
  for (auto p : universe) check_pair_range(p, a1.rows());

  struct Entry {
    int dist;
    std::pair<int, int> pair;
  };
  std::vector<Entry> entries;
  entries.reserve(universe.size());
  for (auto p : universe) {
    entries.push_back({hamming_distance(a1.row(p.first), a1.row(p.second)), p});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.dist, a.pair) < std::tie(b.dist, b.pair);
  });
  // Different seeds should pick different pairs out of an exact-distance tie,
  // so each maximal run of equal distances gets a seeded shuffle.
  Rng rng(seed);
  for (std::size_t lo = 0; lo < entries.size();) {
    std::size_t hi = lo + 1;
    while (hi < entries.size() && entries[hi].dist == entries[lo].dist) ++hi;
    if (hi - lo > 1) {
      std::vector<std::pair<int, int>> run;
      run.reserve(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) run.push_back(entries[i].pair);
      shuffle_all(run, rng);
      for (std::size_t i = lo; i < hi; ++i) entries[i].pair = run[i - lo];
    }
    lo = hi;
  }

  const std::size_t half = static_cast<std::size_t>(count) / 2;
  std::vector<std::pair<int, int>> picked;
  picked.reserve(count);
  for (std::size_t i = 0; i < half; ++i) picked.push_back(entries[i].pair);
  for (std::size_t i = 0; i < half; ++i) picked.push_back(entries[entries.size() - 1 - i].pair);
  return classify_pairs(picked, labels);
}

std::string emit_constraints(const ConstraintSet& cs) {
  std::string out;
  auto append = [&out](const std::vector<std::pair<int, int>>& pairs, const char* tag) {
    for (auto [u, v] : pairs) {
      out += std::to_string(u);
      out += ' ';
      out += std::to_string(v);
      out += ' ';
      out += tag;
      out += '\n';
    }
  };
  append(cs.must_link, "ML");
  append(cs.cannot_link, "CL");
  return out;
}

ConstraintSet parse_constraints(const std::string& text) {
  ConstraintSet cs;
  std::istringstream in(text);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream ls(line);
    int u = 0, v = 0;
    std::string tag;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(ls >> u >> v >> tag) || (tag != "ML" && tag != "CL")) {
      throw std::invalid_argument("constraint file line " + std::to_string(line_no) +
                                  ": expected \"i j ML|CL\", got \"" + line + "\"");
    }
    auto p = std::minmax(u, v);
    if (tag == "ML") {
      cs.must_link.push_back(p);
    } else {
      cs.cannot_link.push_back(p);
    }
  }
  std::sort(cs.must_link.begin(), cs.must_link.end());
  std::sort(cs.cannot_link.begin(), cs.cannot_link.end());
  return cs;
}

}  // namespace sscd
