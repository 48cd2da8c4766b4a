#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hieralign {

// Randomness helpers used by the benchmark generator and the CLI.
//
// std::mt19937_64 itself is fully specified by the standard, but the
// distribution adaptors (uniform_int_distribution etc.) are not — their
// output may differ between standard libraries. Everything here draws raw
// engine words and does its own pinned sampling so that a given seed yields
// identical data on every platform.

// Uniform integer in [0, n). Rejection sampling on the top of the 64-bit
// range removes modulo bias.
inline std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// True with probability p, compared against the top 53 bits so the threshold
// is an exact function of the double argument.
inline bool bernoulli(std::mt19937_64& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

// k distinct integers drawn uniformly from [lo, hi], returned sorted
// ascending. Partial Fisher-Yates over the explicit candidate list.
inline std::vector<int> sample_distinct(std::mt19937_64& rng, int lo, int hi, int k) {
  std::vector<int> pool;
  for (int v = lo; v <= hi; ++v) pool.push_back(v);
  std::vector<int> out;
  for (int i = 0; i < k && !pool.empty(); ++i) {
    const std::uint64_t j = bounded_u64(rng, pool.size());
    out.push_back(pool[j]);
    pool[j] = pool.back();
    pool.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

// FNV-1a over a byte string; used to derive per-query seeds from run
// parameters in a platform-independent way.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hieralign
