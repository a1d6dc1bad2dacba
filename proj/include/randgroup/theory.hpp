#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>

#include "randgroup/bitstream.hpp"
#include "randgroup/primes.hpp"
#include "randgroup/rational.hpp"

namespace randgroup {

/// An ExponentProfile optionally extended with explicit infinity markers, so
/// comparison groups like Q or Z[1/2] are expressible.  Decoded G_R profiles
/// never carry markers.
struct ExtendedProfile {
  ExponentProfile finite;
  std::set<std::size_t> infinite;  // prime indices with n_i = infinity

  static ExtendedProfile from(const ExponentProfile& p) { return {p, {}}; }
};

/// P(G): the set of primes infinitely dividing the group.  Always empty for
/// plain profiles (all exponents finite); exactly the markers otherwise.
inline std::set<std::size_t> infinitely_dividing_primes(const ExtendedProfile& p) {
  return p.infinite;
}
inline std::set<std::size_t> infinitely_dividing_primes(const ExponentProfile&) {
  return {};
}

/// (alpha_{p,n}, beta_p, gamma_p).  For subgroups of Q alpha and beta vanish
/// and gamma = dim(G/pG) is 0 or 1.
struct SzmielewTriple {
  std::size_t alpha = 0;
  std::size_t beta_inv = 0;
  std::size_t gamma = 0;
  bool operator==(const SzmielewTriple&) const = default;
};

inline SzmielewTriple szmielew_invariants(const ExtendedProfile& prof,
                                          std::uint64_t p, std::size_t n) {
  if (n < 1) throw std::invalid_argument("szmielew_invariants: n must be >= 1");
  long idx = prime_index(p);
  if (idx < 0) throw std::invalid_argument("szmielew_invariants: p is not prime");
  bool infinitely = prof.infinite.count(static_cast<std::size_t>(idx)) > 0;
  return {0, 0, infinitely ? 0u : 1u};
}
inline SzmielewTriple szmielew_invariants(const ExponentProfile& prof,
                                          std::uint64_t p, std::size_t n) {
  return szmielew_invariants(ExtendedProfile::from(prof), p, n);
}

inline bool elementarily_equivalent(const ExtendedProfile& a, const ExtendedProfile& b) {
  return infinitely_dividing_primes(a) == infinitely_dividing_primes(b);
}

inline bool equiv_to_integers(const ExtendedProfile& p) {
  return infinitely_dividing_primes(p).empty();
}
inline bool equiv_to_integers(const ExponentProfile&) { return true; }

/// Case-2 witness of the equivalence proof: when p does not infinitely
/// divide the group, m*q^n + l*p = 1 is solvable whenever gcd(q, p) = 1.
/// Returns true and fills (m, l) iff the certificate exists.
inline bool case2_certificate(const Int& q, std::size_t n, const Int& p, Int& m, Int& l) {
  Int qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  auto e = ext_gcd(qn, p);
  if (e.g != 1) return false;
  m = e.x;
  l = e.y;
  return true;
}

}  // namespace randgroup
