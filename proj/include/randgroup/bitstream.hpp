#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "randgroup/rational.hpp"

namespace randgroup {

/// Finite binary string over {'0','1'}; implicitly 0-extended when decoded.
using BitString = std::string;

inline void validate_bits(const BitString& b) {
  for (char c : b)
    if (c != '0' && c != '1')
      throw std::invalid_argument("bit string may contain only 0/1");
}

inline int bit_at(const BitString& b, std::size_t i) {
  return i < b.size() ? b[i] - '0' : 0;  // implicit zero tail
}

/// Stagewise prefixes R^s of a limit-recursive sequence R.
struct ApproximationSchedule {
  std::vector<BitString> stages;

  const BitString& final_stage() const {
    if (stages.empty()) throw std::invalid_argument("schedule has no stages");
    return stages.back();
  }

  /// Least stage from which bit i never changes again (0 if never set).
  std::size_t stabilization_bound(std::size_t i) const {
    std::size_t bound = 0;
    int final_bit = bit_at(final_stage(), i);
    for (std::size_t s = 0; s < stages.size(); ++s)
      if (bit_at(stages[s], i) != final_bit) bound = s + 1;
    return bound;
  }
};

/// R^s; beyond the last stage the schedule has converged.
inline const BitString& approx_prefix(const ApproximationSchedule& sched, std::size_t s) {
  if (sched.stages.empty()) throw std::invalid_argument("schedule has no stages");
  return sched.stages[std::min(s, sched.stages.size() - 1)];
}

/// The sequence (n_i) of prime exponents defining G_R; implicit zero tail.
struct ExponentProfile {
  std::vector<std::size_t> exponents;

  std::size_t at(std::size_t i) const {
    return i < exponents.size() ? exponents[i] : 0;
  }
  bool operator==(const ExponentProfile&) const = default;
};

/// n_i = run of 1s between the i-th and (i+1)-st zero; n_0 = leading run.
inline ExponentProfile decode_profile(const BitString& bits) {
  ExponentProfile p;
  std::size_t run = 0;
  for (char c : bits) {
    if (c == '1') {
      ++run;
    } else {
      p.exponents.push_back(run);
      run = 0;
    }
  }
  // Implicit zero tail terminates the final run.
  if (run > 0) p.exponents.push_back(run);
  while (!p.exponents.empty() && p.exponents.back() == 0) p.exponents.pop_back();
  return p;
}

/// Emit 1^{n_i} 0 blocks; decode_profile(encode_profile(p)) == p (trimmed).
inline BitString encode_profile(const ExponentProfile& p) {
  BitString out;
  for (std::size_t n : p.exponents) {
    out.append(n, '1');
    out.push_back('0');
  }
  return out;
}

/// k independent draws with P(n) = 2^{-n-1}; deterministic given the seed.
inline ExponentProfile sample_profile_geometric(std::uint64_t seed, std::size_t k) {
  if (k < 1) throw std::invalid_argument("sample_profile_geometric: k must be >= 1");
  std::mt19937_64 rng(seed);
  ExponentProfile p;
  p.exponents.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t n = 0;
    while (rng() & 1u) ++n;  // count 1s until the first 0
    p.exponents.push_back(n);
  }
  return p;
}

/// Strictly increasing enumeration i_0 < i_1 < ... (1-based zero counts).
struct Enumeration {
  std::vector<std::size_t> indices;

  void validate() const {
    if (indices.empty() || indices.front() < 1)
      throw std::invalid_argument("enumeration must start at an index >= 1");
    for (std::size_t j = 1; j < indices.size(); ++j)
      if (indices[j] <= indices[j - 1])
        throw std::invalid_argument("enumeration must be strictly increasing");
  }

  static Enumeration initial(std::size_t count) {
    Enumeration e;
    for (std::size_t j = 1; j <= count; ++j) e.indices.push_back(j);
    return e;
  }
};

/// The anti-enumeration martingale of the §3 proposition, evaluated exactly.
///
/// mg(sigma) = 0 if for some j the i_j-th zero of sigma is immediately
/// succeeded by another 0; otherwise, with j the largest j' such that j' = 0
/// or sigma contains at least i_{j'} zeros: 2^{j+1} when sigma contains at
/// least i_j zeros and the i_j-th zero is not sigma's last bit, else 2^j.
inline Rat martingale_value(const Enumeration& en, const BitString& sigma) {
  en.validate();
  std::vector<std::size_t> zero_pos;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] == '0') zero_pos.push_back(i);
  const std::size_t zeros = zero_pos.size();

  for (std::size_t j = 0; j < en.indices.size(); ++j) {
    std::size_t ij = en.indices[j];
    if (zeros < ij) break;
    std::size_t pos = zero_pos[ij - 1];
    if (pos + 1 < sigma.size() && sigma[pos + 1] == '0') return Rat(0);
  }

  std::size_t j = 0;
  for (std::size_t j2 = 0; j2 < en.indices.size(); ++j2)
    if (j2 == 0 || zeros >= en.indices[j2]) j = j2;

  std::size_t ij = en.indices[j];
  int exp = static_cast<int>(j);
  if (zeros >= ij && zero_pos[ij - 1] != sigma.size() - 1) exp += 1;
  Int v = Int(1) << exp;
  return Rat(v);
}

/// Deterministic pseudo-random schedule: a final string plus noisy earlier
/// stages that stabilize pointwise (bit i settles at a seeded stage).
inline ApproximationSchedule seeded_schedule(std::uint64_t seed,
                                             std::size_t bit_len = 24,
                                             std::size_t num_stages = 33) {
  if (bit_len == 0 || num_stages == 0)
    throw std::invalid_argument("seeded_schedule: empty dimensions");
  std::mt19937_64 rng(seed);
  BitString fin(bit_len, '0');
  for (auto& c : fin) c = (rng() & 1u) ? '1' : '0';
  std::vector<std::size_t> settle(bit_len);
  for (std::size_t i = 0; i < bit_len; ++i)
    settle[i] = num_stages > 1 ? rng() % (num_stages - 1) : 0;
  ApproximationSchedule sched;
  for (std::size_t s = 0; s < num_stages; ++s) {
    BitString stage(bit_len, '0');
    for (std::size_t i = 0; i < bit_len; ++i) {
      if (s >= settle[i]) stage[i] = fin[i];
      else stage[i] = (rng() & 1u) ? '1' : '0';
    }
    sched.stages.push_back(std::move(stage));
  }
  sched.stages.back() = fin;
  return sched;
}

}  // namespace randgroup
