#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace randgroup {

/// p_0 = 2, p_1 = 3, ... with a growing cache; desk-scale indices only.
inline std::uint64_t prime(std::size_t index) {
  static thread_local std::vector<std::uint64_t> cache{2, 3, 5, 7, 11, 13};
  while (index >= cache.size()) {
    std::uint64_t c = cache.back() + 2;
    for (;; c += 2) {
      bool comp = false;
      for (std::uint64_t p : cache) {
        if (p * p > c) break;
        if (c % p == 0) { comp = true; break; }
      }
      if (!comp) break;
    }
    cache.push_back(c);
  }
  return cache[index];
}

/// Index i with p_i = p, or -1 if p is not prime / not found below limit.
inline long prime_index(std::uint64_t p, std::size_t limit = 4096) {
  for (std::size_t i = 0; i < limit; ++i) {
    std::uint64_t q = prime(i);
    if (q == p) return static_cast<long>(i);
    if (q > p) return -1;
  }
  return -1;
}

}  // namespace randgroup
