#pragma once

#include <cstdint>

#include "sscd/graph.hpp"

namespace sscd {

// Planted-partition benchmark: n nodes in equally sized communities, expected
// intra-community degree z_in = total_degree - z_out and expected
// inter-community degree z_out.
struct GnConfig {
  int n = 128;
  int communities = 4;
  int total_degree = 16;
  double z_out = 8.0;
  std::uint64_t seed = 0;
};

// Draws each potential pair independently: intra-community pairs with
// probability z_in / (community_size - 1), inter-community pairs with
// probability z_out / (n - community_size), so expected degrees come out at
// z_in and z_out. Bit-for-bit reproducible for a given seed. The planted
// partition is stored in Graph::labels.
Graph generate_gn(const GnConfig& cfg);

}  // namespace sscd
