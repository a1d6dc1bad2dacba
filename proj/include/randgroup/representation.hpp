#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "randgroup/bitstream.hpp"
#include "randgroup/primes.hpp"
#include "randgroup/rational.hpp"

namespace randgroup {

/// sigma in Z^{<omega}; denotes sigma . beta.  Trailing zeros are inert.
using Representation = std::vector<long long>;

inline Representation trim(Representation sigma) {
  while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
  return sigma;
}

/// sigma . beta_prefix = sum sigma(i) * beta_prefix(i), fully reduced.
inline Rat repr_value(const Representation& sigma, const std::vector<Rat>& beta_prefix) {
  if (sigma.size() > beta_prefix.size())
    throw std::invalid_argument("repr_value: representation longer than beta prefix");
  Rat acc(0);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] != 0) acc += Rat(sigma[i]) * beta_prefix[i];
  return acc;
}

/// F = <q/m>, gcd(q, m) = 1.  q = 0 encodes {0} (adversary tests only).
struct SubgroupSpec {
  Int q = 1;
  Int m = 1;

  bool trivial() const { return q == 0; }
  Rat generator() const { return Rat(q, m); }
  bool operator==(const SubgroupSpec&) const = default;
};

inline SubgroupSpec make_spec(Int q, Int m) {
  if (m <= 0) throw std::invalid_argument("SubgroupSpec: m must be positive");
  if (q < 0) q = -q;
  Int g = boost::multiprecision::gcd(q, m);
  if (g > 1) { q /= g; m /= g; }
  if (q == 0) m = 1;
  return {q, m};
}

/// True iff x's denominator factors as prod p_i^{m_i} with m_i <= n_i.
inline bool in_group(const Rat& x, const ExponentProfile& profile) {
  Int d = den(x);
  for (std::size_t i = 0; d > 1; ++i) {
    if (i >= profile.exponents.size() + 64) return false;  // runaway guard
    Int p(prime(i));
    std::size_t m = 0;
    while (d % p == 0) { d /= p; ++m; }
    if (m > profile.at(i)) return false;
  }
  return d == 1;
}

/// True iff x * m / q is an integer (membership in <q/m>).
inline bool in_span(const Rat& x, const SubgroupSpec& spec) {
  if (spec.trivial()) return x == 0;
  return is_integer(x * Rat(spec.m, spec.q));
}

/// Coprime (q, m) with <q/m> = the subgroup generated by the inputs:
/// gcd of numerators over lcm of denominators.
inline SubgroupSpec reduce_generator(const std::vector<Rat>& values) {
  Int l = 1;
  bool any = false;
  for (const Rat& v : values)
    if (v != 0) { any = true; l = boost::multiprecision::lcm(l, den(v)); }
  if (!any) throw std::invalid_argument("reduce_generator: all generators are zero");
  Int g = 0;
  for (const Rat& v : values) {
    if (v == 0) continue;
    Rat scaled = v * Rat(l);
    g = boost::multiprecision::gcd(g, num(scaled));
  }
  return make_spec(g < 0 ? -g : g, l);
}

/// Factor n over indexed primes; desk-scale denominators only.
/// Returns (prime index, exponent) pairs; throws if a factor exceeds the cap.
inline std::vector<std::pair<std::size_t, std::size_t>> factor_indexed(Int n, std::size_t cap = 4096) {
  if (n < 0) n = -n;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; n > 1; ++i) {
    if (i >= cap) throw std::invalid_argument("factor_indexed: factor beyond prime cap");
    Int p(prime(i));
    if (p * p > n && n > 1) {  // remaining n is prime
      long idx = prime_index(static_cast<std::uint64_t>(n));
      if (idx < 0) throw std::invalid_argument("factor_indexed: prime out of table");
      out.emplace_back(static_cast<std::size_t>(idx), 1);
      return out;
    }
    std::size_t m = 0;
    while (n % p == 0) { n /= p; ++m; }
    if (m > 0) out.emplace_back(i, m);
  }
  return out;
}

}  // namespace randgroup
