#include <catch2/catch_amalgamated.hpp>

#include "randgroup/census.hpp"
#include "randgroup/genseq.hpp"

using namespace randgroup;

namespace {
const ApproximationSchedule kWorked{{"1111010", "1111010", "1111010", "1101010"}};
}

TEST_CASE("window vectors and indexing") {
  const auto& v2 = window_vectors(2);
  CHECK(v2.size() == 1 + 5 + 25);
  for (std::size_t i = 0; i < v2.size(); ++i)
    CHECK(window_index(v2[i], 2) == i);
  CHECK(in_window({2, -2}, 2));
  CHECK_FALSE(in_window({3}, 2));
  CHECK_FALSE(in_window({1, 1, 1}, 2));
  CHECK_THROWS_AS(window_index({3}, 2), std::invalid_argument);
}

TEST_CASE("window values follow the vector order") {
  std::vector<Rat> beta{Rat(1), Rat(1, 4), Rat(1, 3)};
  auto vals = window_values(3, beta);
  const auto& vecs = window_vectors(3);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    REQUIRE((*vals)[i] == repr_value(vecs[i], beta));
}

TEST_CASE("core builder replays the worked stage example") {
  GenSeqState st = run_builder(Variant::core, kWorked, 3);
  const auto& b2 = *st.history[2].beta_full;
  REQUIRE(b2 == std::vector<Rat>{Rat(1), Rat(1, 16), Rat(1, 3)});
  const auto& b3 = *st.history[3].beta_full;
  REQUIRE(b3.size() == 4);
  CHECK(b3[1] == Rat(9));
  CHECK(b3[3] == Rat(1, 4));
  REQUIRE(st.change_log.size() == 1);
  CHECK(st.change_log[0].stage == 3);
  CHECK(st.change_log[0].index == 1);
  CHECK(st.change_log[0].old_value == Rat(1, 16));
  CHECK(st.change_log[0].new_value == Rat(9));
}

TEST_CASE("replacement search agrees with the pair-literal oracle") {
  std::vector<Rat> beta{Rat(1), Rat(1, 16), Rat(1, 3)};
  for (int bound : {1, 2, 3}) {
    std::vector<WindowPair> pairs;
    const auto& vecs = window_vectors(bound);
    auto vals = window_values(bound, beta);
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = i + 1; j < vecs.size(); ++j)
        if ((*vals)[i] != (*vals)[j]) pairs.push_back({vecs[i], vecs[j], 0});
    for (std::size_t pos = 0; pos < beta.size(); ++pos)
      REQUIRE(replacement_integer(pairs, beta, pos) ==
              replacement_integer_fast(beta, pos, bound));
  }
  // At bound 3 the window forbids exactly 0..8 at position 1.
  CHECK(replacement_integer_fast(beta, 1, 3) == 9);
  CHECK_THROWS_AS(replacement_integer_fast(beta, 5, 3), std::invalid_argument);
}

TEST_CASE("crt unit inverses") {
  CHECK(crt_unit_inverse(Int(5), 2, 2) == 29);      // 5w = 1 mod 4 and mod 9
  CHECK(crt_unit_inverse(Int(3), 1, 1) == 1);       // 3w = 1 mod 2
  CHECK_THROWS_AS(crt_unit_inverse(Int(5), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(crt_unit_inverse(Int(5), 0, 1), std::invalid_argument);
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t s = 1; s <= 3; ++s)
      for (std::size_t n = 1; n <= 2; ++n) {
        Int pp = pow_int(Int(prime(l)), n);
        Int w = crt_unit_inverse(pp, s, l);
        Int modulus = 1;
        for (std::size_t i = 0; i < l; ++i) modulus *= pow_int(Int(prime(i)), s);
        CHECK(w >= 1);
        CHECK(w <= modulus);
        for (std::size_t i = 0; i < l; ++i)
          CHECK(pp * w % pow_int(Int(prime(i)), s) == 1);
      }
}

TEST_CASE("mod1 and fgsub replacements") {
  GenSeqState m = run_builder(Variant::mod1, kWorked, 3);
  REQUIRE(m.change_log.size() == 1);
  CHECK(m.change_log[0].new_value == Rat(0));

  GenSeqState f = run_builder(Variant::fgsub, kWorked, 3);
  REQUIRE(f.change_log.size() == 1);
  const Rat& w = f.change_log[0].new_value;
  CHECK(is_integer(w));  // CRT unit replacement for the invalidated 2-power
}

TEST_CASE("stage archives are monotone per variant") {
  for (std::uint64_t seed : {3u, 4u}) {
    ApproximationSchedule sch = seeded_schedule(seed);
    GenSeqState core = run_builder(Variant::core, sch, 40);
    for (std::size_t s = 0; s + 1 < core.history.size(); ++s)
      REQUIRE(delta_monotone(core.history[s], core.history[s + 1]));
    GenSeqState m = run_builder(Variant::mod1, sch, 40);
    for (std::size_t s = 0; s + 1 < m.history.size(); ++s)
      REQUIRE(e_monotone(m.history[s], m.history[s + 1]));
  }
}

TEST_CASE("fgsub membership is monotone past the stabilization stage") {
  ApproximationSchedule sch = seeded_schedule(5);
  GenSeqState f = run_builder(Variant::fgsub, sch, 40);
  SubgroupSpec spec = make_spec(1, 1);
  std::size_t sF = stabilization_stage_sF(f, spec);
  REQUIRE(sF < 40);
  for (std::size_t s = sF; s + 1 < f.history.size(); ++s)
    REQUIRE(f_monotone(f.history[s], f.history[s + 1], spec, false));
}

TEST_CASE("enumerations agree with the window census") {
  ApproximationSchedule sch = seeded_schedule(6);
  GenSeqState core = run_builder(Variant::core, sch, 64);
  WindowCensus cc =
      window_census(*core.history.back().beta_full, core.history.back().bound);
  CHECK(neq_matches_census(NeqEnumeration(core, 64), cc));

  GenSeqState m = run_builder(Variant::mod1, sch, 64);
  WindowCensus cm = window_census(*m.history.back().beta_full, m.history.back().bound);
  CHECK(eq_mod1_matches_census(EqMod1Enumeration(m, 64), cm));

  GenSeqState f = run_builder(Variant::fgsub, sch, 64);
  WindowCensus cf = window_census(*f.history.back().beta_full, f.history.back().bound);
  CHECK(subgroup_reps_match_census(SubgroupRepsEnumeration(f, make_spec(1, 1), 64), cf));
}

TEST_CASE("neq enumeration emits stage-stamped pairs") {
  GenSeqState core = run_builder(Variant::core, kWorked, 3);
  NeqEnumeration en(core, 3);
  std::size_t count = 0;
  en.for_each(50, [&](const WindowPair& p) {
    ++count;
    REQUIRE(en.stage_found(p.sigma, p.tau) == p.stage_found);
  });
  CHECK(count == 50);
  CHECK(en.contains({1}, {}));           // 1 != 0
  CHECK_FALSE(en.contains({1}, {1}));    // never unequal
  CHECK_THROWS_AS(NeqEnumeration(run_builder(Variant::mod1, kWorked, 2), 2),
                  std::invalid_argument);
}

TEST_CASE("subring builder fixes the least invertible prime") {
  ApproximationSchedule sch{{"110101"}};
  GenSeqState sb = run_builder(Variant::subring, sch, 12);
  CHECK(prime(sb.subring_prime_index) == 2);
  const auto& beta = *sb.history.back().beta_full;
  REQUIRE(beta.size() >= 2);
  CHECK(beta[0] == Rat(1));
  CHECK(beta[1] == Rat(1, 2));
  // power ladders for the invertible primes appear
  CHECK(sb.has_entry_value(Rat(1, 4)));
  CHECK(sb.has_entry_value(Rat(1, 3)));
  CHECK(sb.has_entry_value(Rat(1, 9)));
  CHECK_THROWS_AS(run_builder(Variant::subring, ApproximationSchedule{{"000"}}, 2),
                  std::invalid_argument);
}

TEST_CASE("subring complement stream is sound against the census") {
  ApproximationSchedule sch{{"110101"}};
  GenSeqState sb = run_builder(Variant::subring, sch, 12);
  WindowCensus c = window_census(*sb.history.back().beta_full, sb.history.back().bound);
  for (Int m : {1, 2, 4, 3}) {
    SubgroupSpec spec = make_spec(1, m);
    SubringComplementEnumeration en(sb, spec, 12);
    CHECK(subring_complement_matches_census(en, c));
  }
}

TEST_CASE("prufer builder zeroes invalidated primes and keeps mod-1 equalities") {
  ApproximationSchedule sch = seeded_schedule(9);
  GenSeqState pr = build_prufer_genseq(sch, 40);
  for (std::size_t s = 0; s + 1 < pr.history.size(); ++s)
    REQUIRE(e_monotone(pr.history[s], pr.history[s + 1]));
  for (const ChangeRecord& c : pr.change_log) REQUIRE(c.new_value == Rat(0));
  WindowCensus c = window_census(*pr.history.back().beta_full, pr.history.back().bound);
  CHECK(eq_mod1_matches_census(EqMod1Enumeration(pr, 40), c));
}
