#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "randgroup/representation.hpp"

namespace randgroup {

/// A (sigma, tau) pair observed in some stage window.
struct WindowPair {
  Representation sigma, tau;
  std::size_t stage_found = 0;
};

/// All representations with length <= bound and entries in [-bound, bound],
/// ordered level by level (length 0, 1, ...), lexicographically within a
/// level.  Vector k of level L > 0 extends vector k/(2b+1) of level L-1.
inline const std::vector<Representation>& window_vectors(int bound) {
  static thread_local std::map<int, std::vector<Representation>> cache;
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<Representation> vecs;
  vecs.push_back({});
  std::size_t level_begin = 0, level_end = 1;
  for (int len = 1; len <= bound; ++len) {
    std::size_t next_begin = vecs.size();
    for (std::size_t k = level_begin; k < level_end; ++k)
      for (int e = -bound; e <= bound; ++e) {
        Representation v = vecs[k];
        v.push_back(e);
        vecs.push_back(std::move(v));
      }
    level_begin = next_begin;
    level_end = vecs.size();
  }
  return cache.emplace(bound, std::move(vecs)).first->second;
}

/// Values of every window vector under beta_prefix (needs >= bound entries),
/// aligned with window_vectors(bound).  Computed incrementally parent->child.
inline std::shared_ptr<const std::vector<Rat>> window_values(
    int bound, const std::vector<Rat>& beta_prefix) {
  if (static_cast<int>(beta_prefix.size()) < bound)
    throw std::invalid_argument("window_values: beta prefix shorter than bound");
  const auto& vecs = window_vectors(bound);
  auto out = std::make_shared<std::vector<Rat>>(vecs.size());
  std::size_t level_begin = 0, level_end = 1;
  std::size_t child = 1;
  (*out)[0] = Rat(0);
  for (int len = 1; len <= bound; ++len) {
    const Rat& b = beta_prefix[static_cast<std::size_t>(len) - 1];
    for (std::size_t k = level_begin; k < level_end; ++k)
      for (int e = -bound; e <= bound; ++e, ++child)
        (*out)[child] = e == 0 ? (*out)[k] : (*out)[k] + Rat(e) * b;
    level_begin = level_end;
    level_end = child;
  }
  return out;
}

inline int max_abs_entry(const Representation& v) {
  long long m = 0;
  for (long long e : v) m = std::max(m, e < 0 ? -e : e);
  return static_cast<int>(m);
}

/// True iff v fits a window of the given bound.
inline bool in_window(const Representation& v, int bound) {
  return static_cast<int>(v.size()) <= bound && max_abs_entry(v) <= bound;
}

/// Index of v within window_vectors(bound); v must fit the bound.
inline std::size_t window_index(const Representation& v, int bound) {
  if (!in_window(v, bound))
    throw std::invalid_argument("window_index: vector outside window");
  // Levels 0..len-1 precede; within the chain, child = parent_base + offset.
  std::size_t radix = static_cast<std::size_t>(2 * bound + 1);
  std::size_t level_size = 1, level_begin = 0;
  for (std::size_t len = 0; len < v.size(); ++len) {
    level_begin += level_size;
    level_size *= radix;
  }
  std::size_t off = 0;
  for (long long e : v) off = off * radix + static_cast<std::size_t>(e + bound);
  return level_begin + off;
}

}  // namespace randgroup
