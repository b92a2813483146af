#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sscd/constraints.hpp"
#include "sscd/gn.hpp"
#include "sscd/graph.hpp"
#include "sscd/rng.hpp"

using namespace sscd;

namespace {

Graph random_labeled_graph(int n, int k, double p, std::uint64_t seed) {
  Graph g;
  g.n = n;
  Rng rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (uniform_unit(rng) < p) g.edges.emplace_back(u, v);
    }
  }
  for (int i = 0; i < n; ++i) g.labels[i] = static_cast<int>(uniform_below(rng, k));
  return g;
}

// Consensus matrix straight from the definition: 1 iff same community.
Eigen::MatrixXd consensus_matrix(const Graph& g) {
  Eigen::MatrixXd c(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      c(i, j) = g.labels.at(i) == g.labels.at(j) ? 1.0 : 0.0;
    }
  }
  return c;
}

ConstraintSet all_pairs_from_labels(const Graph& g) {
  ConstraintSet cs;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (g.labels.at(i) == g.labels.at(j)) cs.must_link.emplace_back(i, j);
      else cs.cannot_link.emplace_back(i, j);
    }
  }
  return cs;
}

}  // namespace

TEST_CASE("encode_b branch behaviour") {
  Eigen::MatrixXd id2 = Eigen::MatrixXd::Identity(2, 2);
  ConstraintSet ml;
  ml.must_link = {{0, 1}};
  Eigen::MatrixXd b = encode_b(id2, ml, EncodingConfig{.alpha = 2.0});
  CHECK(b(0, 0) == 1.0);
  CHECK(b(0, 1) == 2.0);
  CHECK(b(1, 0) == 2.0);

  Eigen::MatrixXd ones2 = Eigen::MatrixXd::Ones(2, 2);
  ConstraintSet cl;
  cl.cannot_link = {{0, 1}};
  CHECK(encode_b(ones2, cl).isApprox(Eigen::MatrixXd::Identity(2, 2)));

  CHECK(encode_b(ones2, ConstraintSet{}) == ones2);
}

TEST_CASE("encode_b leaves unconstrained entries bitwise untouched") {
  const Graph g = random_labeled_graph(15, 3, 0.3, 5);
  const Eigen::MatrixXd a1 = adjacency_a1(g);
  ConstraintSet cs;
  cs.must_link = {{0, 3}};
  cs.cannot_link = {{1, 2}};
  const Eigen::MatrixXd b = encode_b(a1, cs, EncodingConfig{.alpha = 2.0});
  CHECK(b.isApprox(b.transpose()));
  CHECK(b.minCoeff() >= 0.0);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const bool touched = (i == 0 && j == 3) || (i == 3 && j == 0) ||
                           (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!touched) CHECK(b(i, j) == a1(i, j));
    }
  }
}

TEST_CASE("encode_b reports constraint conflicts by pair") {
  Eigen::MatrixXd ones3 = Eigen::MatrixXd::Ones(3, 3);
  ConstraintSet cs;
  cs.must_link = {{0, 1}};
  cs.cannot_link = {{1, 0}};
  CHECK_THROWS_WITH_AS(encode_b(ones3, cs), doctest::Contains("(1, 0)"), std::invalid_argument);

  ConstraintSet self;
  self.must_link = {{2, 2}};
  CHECK_THROWS_AS(encode_b(ones3, self), std::invalid_argument);
  ConstraintSet range;
  range.cannot_link = {{0, 3}};
  CHECK_THROWS_AS(encode_b(ones3, range), std::invalid_argument);
}

TEST_CASE("full constraints at alpha=1 reduce B to the consensus matrix") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 5 + static_cast<int>(seed % 46);
    const Graph g = random_labeled_graph(n, 2 + seed % 3, 0.25, seed);
    const ConstraintSet cs = all_pairs_from_labels(g);
    const Eigen::MatrixXd b = encode_b(adjacency_a1(g), cs, EncodingConfig{.alpha = 1.0});
    CHECK(b == consensus_matrix(g));
    // Encoding a consensus matrix with the same constraints is a fixpoint.
    CHECK(encode_b(b, cs, EncodingConfig{.alpha = 1.0}) == b);
  }
}

TEST_CASE("sample_random_constraints is seeded and label-consistent") {
  std::map<int, int> labels = {{0, 0}, {1, 0}, {2, 1}};
  CHECK(sample_random_constraints(labels, 0.0, 1).empty());

  const ConstraintSet full = sample_random_constraints(labels, 1.0, 1);
  CHECK(full.must_link == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(full.cannot_link == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});

  const Graph g = random_labeled_graph(40, 4, 0.2, 11);
  const ConstraintSet a = sample_random_constraints(g.labels, 0.3, 42);
  const ConstraintSet b = sample_random_constraints(g.labels, 0.3, 42);
  CHECK(a.must_link == b.must_link);
  CHECK(a.cannot_link == b.cannot_link);
  const std::size_t expected =
      static_cast<std::size_t>(0.3 * static_cast<double>(pair_universe_size(40)));
  CHECK(a.size() == expected);
  for (auto [u, v] : a.must_link) CHECK(g.labels.at(u) == g.labels.at(v));
  for (auto [u, v] : a.cannot_link) CHECK(g.labels.at(u) != g.labels.at(v));

  CHECK_THROWS_AS(sample_random_constraints(labels, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_random_constraints({}, 0.5, 0), std::invalid_argument);
}

TEST_CASE("110 labeled nodes give a 5995-pair universe") {
  CHECK(pair_universe_size(110) == 5995);
  std::map<int, int> labels;
  for (int i = 0; i < 110; ++i) labels[i] = i % 11;
  CHECK(sample_random_constraints(labels, 1.0, 0).size() == 5995);
}

TEST_CASE("hamming_distance counts differing positions") {
  Eigen::VectorXd a(3), b(3);
  a << 1, 1, 0;
  b << 1, 1, 0;
  CHECK(hamming_distance(a, b) == 0);
  a << 1, 0, 1;
  b << 0, 1, 0;
  CHECK(hamming_distance(a, b) == 3);
  Eigen::VectorXd c(4), d(4);
  c << 1, 1, 0, 1;
  d << 1, 0, 0, 0;
  CHECK(hamming_distance(c, d) == 2);
  CHECK_THROWS_AS(hamming_distance(a, c), std::invalid_argument);
}

TEST_CASE("rule-based selection picks distance extremes on two cliques") {
  // Two disjoint 3-cliques: every intra-clique pair of A1 rows is identical
  // (distance 0) and every inter-clique pair differs in all 6 positions.
  Graph g;
  g.n = 6;
  g.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
  for (int i = 0; i < 6; ++i) g.labels[i] = i / 3;
  const Eigen::MatrixXd a1 = adjacency_a1(g);

  // Brute-force oracle over all 15 pairs.
  std::map<std::pair<int, int>, int> dist;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      int d = 0;
      for (int c = 0; c < 6; ++c) d += a1(i, c) != a1(j, c);
      dist[{i, j}] = d;
    }
  }
  for (const auto& [pair, d] : dist) {
    const bool same = pair.first / 3 == pair.second / 3;
    CHECK(d == (same ? 0 : 6));
  }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ConstraintSet cs = sample_rule_based_constraints(a1, g.labels, 4, seed);
    REQUIRE(cs.must_link.size() == 2);   // smallest distances: intra-clique
    REQUIRE(cs.cannot_link.size() == 2); // largest distances: inter-clique
    for (auto [u, v] : cs.must_link) CHECK(dist.at({u, v}) == 0);
    for (auto [u, v] : cs.cannot_link) CHECK(dist.at({u, v}) == 6);
  }

  CHECK_THROWS_AS(sample_rule_based_constraints(a1, g.labels, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_rule_based_constraints(a1, g.labels, 16, 0), std::invalid_argument);
}

TEST_CASE("rule-based tie shuffling varies with the seed but not within it") {
  const Graph g = random_labeled_graph(24, 3, 0.3, 3);
  const Eigen::MatrixXd a1 = adjacency_a1(g);
  const ConstraintSet a = sample_rule_based_constraints(a1, g.labels, 10, 1);
  const ConstraintSet b = sample_rule_based_constraints(a1, g.labels, 10, 1);
  CHECK(a.must_link == b.must_link);
  CHECK(a.cannot_link == b.cannot_link);
}

TEST_CASE("denoising progression approaches the consensus matrix") {
  const Graph g = random_labeled_graph(30, 3, 0.25, 9);
  const Eigen::MatrixXd a1 = adjacency_a1(g);
  const Eigen::MatrixXd target = consensus_matrix(g);
  double prev = -1.0;
  for (double fraction : {0.0, 0.5, 1.0}) {
    double err = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const ConstraintSet cs =
          fraction == 0.0 ? ConstraintSet{} : sample_random_constraints(g.labels, fraction, seed);
      err += (encode_b(a1, cs, EncodingConfig{.alpha = 1.0}) - target).cwiseAbs().sum();
    }
    if (prev >= 0.0) CHECK(err < prev);
    prev = err;
  }
  CHECK(prev == 0.0);  // fully constrained: exact consensus for every seed
}

TEST_CASE("constraint files round-trip") {
  ConstraintSet cs;
  cs.must_link = {{0, 4}, {2, 3}};
  cs.cannot_link = {{1, 5}};
  const std::string text = emit_constraints(cs);
  CHECK(text == "0 4 ML\n2 3 ML\n1 5 CL\n");
  const ConstraintSet back = parse_constraints(text);
  CHECK(back.must_link == cs.must_link);
  CHECK(back.cannot_link == cs.cannot_link);
  CHECK_THROWS_AS(parse_constraints("0 1 XX"), std::invalid_argument);
}
