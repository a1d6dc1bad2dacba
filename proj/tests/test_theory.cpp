#include <catch2/catch_amalgamated.hpp>

#include "randgroup/bitstream.hpp"
#include "randgroup/theory.hpp"

using namespace randgroup;

TEST_CASE("plain profiles never divide infinitely") {
  ExponentProfile p{{4, 1, 0, 7}};
  CHECK(infinitely_dividing_primes(p).empty());
  CHECK(equiv_to_integers(p));
  CHECK(equiv_to_integers(ExponentProfile{}));  // the integers themselves
}

TEST_CASE("szmielew triples for subgroups of the rationals") {
  ExponentProfile p{{2, 1}};
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13})
    for (std::size_t n = 1; n <= 5; ++n)
      CHECK(szmielew_invariants(p, q, n) == SzmielewTriple{0, 0, 1});
  CHECK_THROWS_AS(szmielew_invariants(p, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(szmielew_invariants(p, 2, 0), std::invalid_argument);

  ExtendedProfile half;  // Z[1/2]
  half.infinite.insert(0);
  CHECK(szmielew_invariants(half, 2, 3) == SzmielewTriple{0, 0, 0});
  CHECK(szmielew_invariants(half, 3, 3) == SzmielewTriple{0, 0, 1});
}

TEST_CASE("triples are independent of n") {
  ExtendedProfile q_like;
  for (std::size_t i = 0; i < 6; ++i) q_like.infinite.insert(i);
  for (const ExtendedProfile& prof :
       {ExtendedProfile::from(ExponentProfile{{1, 2}}), q_like}) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
      for (std::size_t n = 2; n <= 5; ++n)
        CHECK(szmielew_invariants(prof, p, n) == szmielew_invariants(prof, p, 1));
  }
}

TEST_CASE("elementary equivalence separates Z from Z[1/2]") {
  ExtendedProfile z = ExtendedProfile::from(ExponentProfile{});
  ExtendedProfile z2;
  z2.infinite.insert(0);
  CHECK_FALSE(elementarily_equivalent(z, z2));
  CHECK(elementarily_equivalent(z, ExtendedProfile::from(ExponentProfile{{3, 3}})));
  CHECK_FALSE(equiv_to_integers(z2));
}

TEST_CASE("equivalence is an equivalence relation on sampled profiles") {
  std::vector<ExtendedProfile> profs;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ExtendedProfile p = ExtendedProfile::from(sample_profile_geometric(seed, 8));
    if (seed % 3 == 0) p.infinite.insert(seed % 5);
    profs.push_back(p);
  }
  for (const auto& a : profs) CHECK(elementarily_equivalent(a, a));
  for (const auto& a : profs)
    for (const auto& b : profs) {
      CHECK(elementarily_equivalent(a, b) == elementarily_equivalent(b, a));
      for (const auto& c : profs)
        if (elementarily_equivalent(a, b) && elementarily_equivalent(b, c))
          CHECK(elementarily_equivalent(a, c));
    }
}

TEST_CASE("case-2 certificates exist exactly for coprime bases") {
  Int m, l;
  REQUIRE(case2_certificate(3, 2, 5, m, l));
  CHECK(m * 9 + l * 5 == 1);
  REQUIRE(case2_certificate(7, 1, 2, m, l));
  CHECK(m * 7 + l * 2 == 1);
  CHECK_FALSE(case2_certificate(6, 2, 3, m, l));  // gcd(36, 3) != 1
}
