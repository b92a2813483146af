#pragma once

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

namespace sscd {

// std::mt19937_64 is fully specified by the standard, so its output stream is
// identical across compilers and platforms. The standard *distributions* are
// not, which is why the draws below are hand-rolled.
using Rng = std::mt19937_64;

// splitmix64 (Steele, Lea, Flood) — used as a seed scrambler and stable hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a master seed and an index path,
// e.g. derive_seed(master, {model_idx, fraction_idx, trial_idx}). Each path
// component is absorbed through splitmix64 so nearby indices decorrelate.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) {
    s = splitmix64(s ^ splitmix64(p + 0x9e3779b97f4a7c15ULL));
  }
  return s;
}

// Uniform double in [0, 1), 53-bit resolution.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform double in (0, 1]. Strictly positive, which matters for NMF factor
// initialisation: multiplicative updates cannot escape an exact zero.
inline double uniform_positive_unit(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n) via rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  assert(n > 0);
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
  if (rem == 0) return rng() % n;
  const std::uint64_t bound = 0 - rem;  // n * floor(2^64 / n)
  std::uint64_t x = rng();
  while (x >= bound) x = rng();
  return x % n;
}

// Fisher–Yates over the first m slots; v[0..m) ends up as a uniform sample
// without replacement from v.
template <typename T>
void shuffle_prefix(std::vector<T>& v, std::size_t m, Rng& rng) {
  assert(m <= v.size());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, v.size() - i));
    std::swap(v[i], v[j]);
  }
}

template <typename T>
void shuffle_all(std::vector<T>& v, Rng& rng) {
  if (v.size() > 1) shuffle_prefix(v, v.size() - 1, rng);
}

}  // namespace sscd
