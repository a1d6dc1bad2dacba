#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "randgroup/learners.hpp"

using namespace randgroup;

namespace {

GenSeqState quarter_run() {  // final beta starts (1, 1/4, 1, ...)
  return run_builder(Variant::fgsub, ApproximationSchedule{{"110"}}, 4);
}

GenSeqState rich_run() {  // final beta (1, 1/8, 1/3, 1/5, 1/7, 1, ...)
  return run_builder(Variant::fgsub, ApproximationSchedule{{"1110101010"}}, 8);
}

bool text_contains(const Text& t, const Representation& r) {
  return std::any_of(t.items.begin(), t.items.end(), [&](const TextItem& it) {
    return !it.pause && trim(it.datum) == trim(r);
  });
}

}  // namespace

TEST_CASE("semantic equality of hypotheses") {
  Hypothesis a = Hypothesis::subgroup(make_spec(2, 4), 1);
  Hypothesis b = Hypothesis::subgroup(make_spec(1, 2), 2);
  Hypothesis c = Hypothesis::subgroup(make_spec(1, 3), 3);
  CHECK(semantic_eq(a, b));       // <2/4> = <1/2>
  CHECK_FALSE(semantic_eq(a, c)); // <1/2> != <1/3>
  CHECK_FALSE(syntactic_eq(a, b));

  Hypothesis m;
  m.kind = Hypothesis::Kind::Mod1Subgroup;
  m.spec = make_spec(1, 4);
  Hypothesis r;
  r.kind = Hypothesis::Kind::ResidueSet;
  r.residues = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4)};
  CHECK(semantic_eq(m, r));
  r.residues.erase(Rat(1, 2));
  CHECK_FALSE(semantic_eq(m, r));
  CHECK_FALSE(semantic_eq(a, r));  // incomparable kinds
}

TEST_CASE("values round-trip through representations") {
  GenSeqState run = rich_run();
  const auto& beta = *run.history.back().beta_full;
  for (const Rat& x : {Rat(1, 2), Rat(3, 8), Rat(5), Rat(7, 3), Rat(11, 35), Rat(0)})
    CHECK(repr_value(repr_of_value(x, beta), beta) == x);
  CHECK_THROWS_AS(repr_of_value(Rat(1, 11), beta), std::invalid_argument);
}

TEST_CASE("canonical texts are deterministic and fair") {
  GenSeqState run = quarter_run();
  SubgroupSpec one = make_spec(1, 1);
  Text t1 = canonical_text(one, run, 0, 10);
  Text t2 = canonical_text(one, run, 0, 10);
  REQUIRE(t1.items.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(t1.items[i].pause == t2.items[i].pause);
    CHECK(t1.items[i].datum == t2.items[i].datum);
  }
  CHECK(text_contains(t1, {1}));
  CHECK_THROWS_AS(canonical_text(make_spec(0, 1), run, 0, 10), std::invalid_argument);

  SubgroupSpec half = make_spec(1, 2);
  Text th = canonical_text(half, run, 3, 120);
  CHECK(text_contains(th, {2}));     // the numerator singleton
  CHECK(text_contains(th, {0, 2}));  // denominator witness over beta(1) = 1/4
  // fairness: every window member within the certified bound occurs
  const auto& beta = *run.history.back().beta_full;
  WindowCensus c = window_census(beta, th.fairness_bound);
  for (const auto& m : c.members(half, false)) CHECK(text_contains(th, m));
  // every non-pause item really is a member of the target
  for (const auto& it : th.items)
    if (!it.pause) CHECK(in_span(repr_value(it.datum, beta), half));
}

TEST_CASE("bc learner worked trace") {
  GenSeqState run = quarter_run();
  BcLearnerState st;
  Hypothesis h = bc_learner_step(st, TextItem::pause_item(), run);
  CHECK(h.spec == make_spec(1, 1));  // default <1> before any singleton
  h = bc_learner_step(st, TextItem::of({2}), run);
  h = bc_learner_step(st, TextItem::of({0, 2}), run);
  // gcd is 2, which shares a factor with the witness prime, so the witness
  // is rejected and the guess stays <2>.
  CHECK(h.spec == make_spec(2, 1));
  h = bc_learner_step(st, TextItem::of({1}), run);
  CHECK(h.spec == make_spec(1, 2));  // now q' = 1 and the witness counts
  CHECK_THROWS_AS(bc_learner_step(st, TextItem::pause_item(),
                                  run_builder(Variant::core, ApproximationSchedule{{"110"}}, 2)),
                  std::invalid_argument);
}

TEST_CASE("bc learner integer target") {
  GenSeqState run = quarter_run();
  BcLearnerState st;
  bc_learner_step(st, TextItem::of({3}), run);
  bc_learner_step(st, TextItem::of({6}), run);
  Hypothesis h = bc_learner_step(st, TextItem::of({9}), run);
  CHECK(h.spec == make_spec(3, 1));
}

TEST_CASE("mod1 bc learner closes the seen residues") {
  GenSeqState run = run_builder(Variant::mod1, ApproximationSchedule{{"110"}}, 4);
  Mod1BcState st;
  Hypothesis h = mod1_bc_learner_step(st, TextItem::pause_item(), run);
  CHECK(h.residues.empty());
  h = mod1_bc_learner_step(st, TextItem::of({0, 1}), run);
  CHECK(h.residues == std::set<Rat>{Rat(1, 4)});
  SubgroupSpec quarter = make_spec(1, 4);
  const auto& beta = *run.history.back().beta_full;
  for (Int k = 0; k < 4; ++k)
    h = mod1_bc_learner_step(st, TextItem::of(repr_of_value(frac_part(Rat(k, 4)), beta)),
                             run);
  CHECK(h.residues == mod1_residue_set(quarter));
  Hypothesis target;
  target.kind = Hypothesis::Kind::Mod1Subgroup;
  target.spec = quarter;
  CHECK(semantic_eq(h, target));
}

TEST_CASE("exk learner follows the generator chain") {
  GenSeqState run = quarter_run();
  EqualityOracle oracle(run);
  ExkState st;
  Hypothesis h = exk_learner_step(st, TextItem::of({0, 0}), oracle);
  CHECK(h.kind == Hypothesis::Kind::Default);  // zero datum: placeholder
  h = exk_learner_step(st, TextItem::of({1}), oracle);
  CHECK(h.spec == make_spec(1, 1));
  h = exk_learner_step(st, TextItem::of({0, 2}), oracle);  // value 1/2
  CHECK(h.spec == make_spec(1, 2));

  // Two presentation orders converge to the same syntactic index.
  ExkState st2;
  exk_learner_step(st2, TextItem::of({0, 2}), oracle);
  Hypothesis h2 = exk_learner_step(st2, TextItem::of({1}), oracle);
  CHECK(syntactic_eq(h, h2));
}

TEST_CASE("equality-class learner reconstructs pivot and multipliers") {
  EqClassState st;
  Hypothesis h = equality_class_learner_step(st, std::nullopt);
  CHECK(h.pivot == 0);
  CHECK(h.multipliers.empty());
  h = equality_class_learner_step(st, std::make_pair(Representation{}, Representation{0, 1}));
  CHECK(h.pivot == 0);  // index 1 is now known zero, pivot unaffected
  CHECK(h.multipliers.at(1) == 0);
  h = equality_class_learner_step(st, std::make_pair(Representation{1}, Representation{0, 0, 2}));
  CHECK(h.multipliers.at(2) == Rat(1, 2));  // b_2 = b_0 / 2
  // A zero singleton at the pivot moves the pivot up.
  EqClassState st2;
  h = equality_class_learner_step(st2, std::make_pair(Representation{}, Representation{1}));
  CHECK(h.pivot == 1);
}

TEST_CASE("subring learner is conservative and exact") {
  GenSeqState run = run_builder(Variant::subring, ApproximationSchedule{{"110101"}}, 12);
  SubringExState st;
  Hypothesis h = subring_ex_learner_step(st, TextItem::of({1}), run);
  CHECK(h.spec == make_spec(1, 1));
  std::uint64_t id = h.handle_id;
  // More members of <1> never cause a mind change.
  for (long long k : {2, 5, 7, 1})
    h = subring_ex_learner_step(st, TextItem::of({k}), run);
  CHECK(h.handle_id == id);
  CHECK(h.spec == make_spec(1, 1));

  // A denominator witness for <1/4> forces a justified change: the indicator
  // at the ladder entry valued 1/4.
  SubringExState st2;
  subring_ex_learner_step(st2, TextItem::of({1}), run);
  const auto& beta = *run.history.back().beta_full;
  std::size_t pos = 0;
  while (beta[pos] != Rat(1, 4)) ++pos;
  Representation wit(pos + 1, 0);
  wit[pos] = 1;
  Hypothesis h2 = subring_ex_learner_step(st2, TextItem::of(wit), run);
  CHECK(h2.spec == make_spec(1, 4));
}
