#include <doctest.h>

#include <map>
#include <set>

#include "sscd/gn.hpp"

using namespace sscd;

TEST_CASE("gn with z_out = 0 keeps every edge inside its community") {
  GnConfig cfg;
  cfg.z_out = 0.0;
  cfg.seed = 7;
  const Graph g = generate_gn(cfg);
  for (auto [u, v] : g.edges) CHECK(u / 32 == v / 32);
}

TEST_CASE("gn plants exactly 32 nodes per community") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    GnConfig cfg;
    cfg.seed = seed;
    const Graph g = generate_gn(cfg);
    REQUIRE(g.labels.size() == 128);
    std::map<int, int> sizes;
    for (const auto& [node, c] : g.labels) ++sizes[c];
    REQUIRE(sizes.size() == 4);
    for (const auto& [c, size] : sizes) CHECK(size == 32);
  }
}

TEST_CASE("gn is reproducible and simple") {
  GnConfig cfg;
  cfg.z_out = 8.0;
  cfg.seed = 1234;
  const Graph a = generate_gn(cfg);
  const Graph b = generate_gn(cfg);
  CHECK(a.edges == b.edges);

  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : a.edges) {
    CHECK(u < v);
    CHECK(v < 128);
    CHECK(seen.insert({u, v}).second);
  }
}

TEST_CASE("gn mean degree matches the configured total over 10 seeds") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GnConfig cfg;
    cfg.z_out = 8.0;
    cfg.seed = seed;
    const Graph g = generate_gn(cfg);
    total += 2.0 * static_cast<double>(g.edges.size()) / g.n;
  }
  CHECK(std::abs(total / 10.0 - 16.0) < 1.5);
}

TEST_CASE("gn intra and inter degrees converge to z_in and z_out") {
  const double z_out = 6.0;
  double intra = 0.0, inter = 0.0;
  const int seeds = 20;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    GnConfig cfg;
    cfg.z_out = z_out;
    cfg.seed = seed;
    const Graph g = generate_gn(cfg);
    for (auto [u, v] : g.edges) {
      if (u / 32 == v / 32) intra += 2.0;
      else inter += 2.0;
    }
  }
  intra /= seeds * 128.0;
  inter /= seeds * 128.0;
  CHECK(std::abs(intra - (16.0 - z_out)) < 1.0);
  CHECK(std::abs(inter - z_out) < 1.0);
}

TEST_CASE("gn config validation") {
  GnConfig bad;
  bad.z_out = 17.0;
  CHECK_THROWS_AS(generate_gn(bad), std::invalid_argument);
  GnConfig odd;
  odd.n = 130;
  CHECK_THROWS_AS(generate_gn(odd), std::invalid_argument);
}
