#include "sscd/gn.hpp"

#include <stdexcept>
#include <string>

#include "sscd/rng.hpp"

namespace sscd {

Graph generate_gn(const GnConfig& cfg) {
  if (cfg.n <= 0 || cfg.communities <= 0 || cfg.n % cfg.communities != 0) {
    throw std::invalid_argument("generate_gn: n must be a positive multiple of communities");
  }
  if (cfg.z_out < 0.0 || cfg.z_out > cfg.total_degree) {
    throw std::invalid_argument("generate_gn: z_out must lie in [0, total_degree]");
  }
  const int size = cfg.n / cfg.communities;
  if (size < 2) throw std::invalid_argument("generate_gn: community size must be at least 2");

  const double z_in = cfg.total_degree - cfg.z_out;
  const double p_in = z_in / (size - 1);
  const double p_out = cfg.n == size ? 0.0 : cfg.z_out / (cfg.n - size);
  if (p_in > 1.0 || p_out > 1.0) {
    throw std::invalid_argument("generate_gn: degree targets exceed available pairs");
  }

  Graph g;
  g.n = cfg.n;
  Rng rng(cfg.seed);
  // Fixed pair order (u < v) so a seed pins the edge set exactly.
  for (int u = 0; u < cfg.n; ++u) {
    for (int v = u + 1; v < cfg.n; ++v) {
      const double p = (u / size == v / size) ? p_in : p_out;
      if (uniform_unit(rng) < p) g.edges.emplace_back(u, v);
    }
  }
  for (int i = 0; i < cfg.n; ++i) g.labels[i] = i / size;
  return g;
}

}  // namespace sscd
