#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

namespace hpq {

// All randomness in the library flows through mt19937_64 plus the helpers
// below. The engine's output sequence is pinned by the standard; the standard
// *distributions* are not, so we roll our own tiny ones to keep runs
// bit-reproducible across toolchains.
using Rng = std::mt19937_64;

inline double uniform01(Rng& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;  // [0,1)
}

inline double uniform(Rng& g, double a, double b) { return a + (b - a) * uniform01(g); }

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

inline double gaussian(Rng& g) {
  // Box-Muller; one value per call keeps the stream simple and deterministic.
  double u1 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline Eigen::VectorXd gaussian_vec(Rng& g, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gaussian(g);
  return v;
}

// k distinct indices out of [0, n), ascending.
inline std::vector<int> sample_indices(Rng& g, int n, int k) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

// Same contract over a domain too large to materialize (e.g. ranks of all
// point pairs): rejection sampling of distinct values, ascending.
inline std::vector<long long> sample_indices_sparse(Rng& g, long long n, int k) {
  if (k > n) k = static_cast<int>(n);
  if (k <= 0) return {};
  if (n <= 4096 || k >= n / 8) {
    std::vector<long long> pool(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
      const long long j =
          i + static_cast<long long>(uniform_below(g, static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<long long> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::unordered_set<long long> seen;
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(out.size()) < k) {
    const long long v =
        static_cast<long long>(uniform_below(g, static_cast<std::uint64_t>(n)));
    if (seen.insert(v).second) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hpq
