#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "randgroup/census.hpp"
#include "randgroup/learners.hpp"

namespace randgroup {

// ---------------------------------------------------------------------------
// Stabilising-sequence search
// ---------------------------------------------------------------------------

struct StabilisingSearchResult {
  std::optional<std::vector<TextItem>> sequence;
  std::size_t steps_used = 0;      // learner invocations spent
  std::size_t frontier_size = 0;   // sequences explored when not found
};

/// Breadth-first search, in canonical order over the given pool, for a
/// sequence whose hypothesis survives (semantically) every one-step
/// extension by a pool item or a pause.  Budget counts learner steps.
inline StabilisingSearchResult find_stabilising_sequence(
    const LearnerFactory& factory, const std::vector<Representation>& pool,
    std::size_t budget) {
  StabilisingSearchResult res;
  std::vector<TextItem> extensions;
  extensions.push_back(TextItem::pause_item());
  for (const auto& r : pool) extensions.push_back(TextItem::of(r));

  auto run = [&](const std::vector<TextItem>& seq) -> std::optional<Hypothesis> {
    StepFn step = factory();
    Hypothesis h;
    for (const auto& it : seq) {
      if (res.steps_used >= budget) return std::nullopt;
      ++res.steps_used;
      h = step(it);
    }
    if (seq.empty()) {
      if (res.steps_used >= budget) return std::nullopt;
      ++res.steps_used;
      h = step(TextItem::pause_item());  // hypothesis of the empty sequence
    }
    return h;
  };

  std::deque<std::vector<TextItem>> frontier;
  frontier.push_back({});
  while (!frontier.empty() && res.steps_used < budget) {
    std::vector<TextItem> seq = std::move(frontier.front());
    frontier.pop_front();
    ++res.frontier_size;
    auto base = run(seq);
    if (!base) break;
    bool stable = true;
    for (const auto& ext : extensions) {
      std::vector<TextItem> seq2 = seq;
      seq2.push_back(ext);
      auto h2 = run(seq2);
      if (!h2) { stable = false; break; }
      if (!semantic_eq(*base, *h2)) {
        stable = false;
        if (frontier.size() < 4096) frontier.push_back(std::move(seq2));
      }
    }
    if (stable && res.steps_used < budget) {
      res.sequence = std::move(seq);
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Ex adversary
// ---------------------------------------------------------------------------

struct AdversaryReport {
  bool witness = false;
  std::vector<TextItem> gamma;
  std::vector<TextItem> delta;
  Hypothesis before, after;
  std::size_t steps_used = 0;
  std::string detail;
};

/// Budgeted realization of the diagonalization against Ex learners: find a
/// candidate stabilising sequence gamma on Z_beta, then probe extensions
/// delta drawn from <p^-1>_beta for each inverted prime.  A mind-change
/// witness is a pair of conjectures that are syntactically different yet
/// semantically equal — the learner keeps changing its index on data that
/// give it no new information, so it cannot be syntactically converging.
inline AdversaryReport ex_adversary(const LearnerFactory& factory,
                                    const GenSeqState& run, std::size_t budget) {
  AdversaryReport rep;
  if (run.variant != Variant::fgsub) {
    rep.detail = "builder variant must be fgsub";
    return rep;
  }
  const auto& beta = *run.history.back().beta_full;
  const int bound = run.history.back().bound;
  const WindowCensus census = window_census(beta, bound);

  // Z_beta pool: window members of <1>, canonical (level) order.
  std::vector<Representation> zpool = census.members(make_spec(1, 1), false);
  if (zpool.size() > 24) zpool.resize(24);

  StabilisingSearchResult s = find_stabilising_sequence(factory, zpool, budget);
  rep.steps_used = s.steps_used;
  if (!s.sequence) {
    rep.detail = "budget exhausted before a stabilising candidate was found";
    return rep;
  }
  rep.gamma = *s.sequence;

  auto hyp_after = [&](const std::vector<TextItem>& seq) {
    StepFn step = factory();
    Hypothesis h;
    for (const auto& it : seq) {
      ++rep.steps_used;
      h = step(it);
    }
    if (seq.empty()) {
      ++rep.steps_used;
      h = step(TextItem::pause_item());
    }
    return h;
  };
  rep.before = hyp_after(rep.gamma);

  // Primes with p^-1 among the final entries, probed in increasing index.
  std::vector<std::size_t> inv_primes;
  for (std::size_t i = 0; i < 64; ++i) {
    Rat pinv = Rat(1, Int(prime(i)));
    bool present = false;
    for (const Rat& b : beta)
      if (den(b) != 1 && is_integer(b / pinv)) { present = true; break; }
    if (present) inv_primes.push_back(i);
    if (inv_primes.size() >= 8) break;
  }

  for (std::size_t i : inv_primes) {
    SubgroupSpec pspan = make_spec(1, Int(prime(i)));
    std::vector<Representation> dpool = census.members(pspan, false);
    for (const auto& d : dpool) {
      if (rep.steps_used >= budget) {
        rep.detail = "budget exhausted while probing extensions";
        return rep;
      }
      std::vector<TextItem> probe = rep.gamma;
      probe.push_back(TextItem::of(d));
      Hypothesis h2 = hyp_after(probe);
      if (!syntactic_eq(rep.before, h2) && semantic_eq(rep.before, h2)) {
        rep.witness = true;
        rep.delta = {TextItem::of(d)};
        rep.after = h2;
        rep.detail = "mind change on semantically redundant datum";
        return rep;
      }
    }
  }
  rep.detail = "budget exhausted: no mind-change witness within the window";
  return rep;
}

// ---------------------------------------------------------------------------
// BC adversary (equality relations)
// ---------------------------------------------------------------------------

/// A pair-learner consumes pairs (claimed equal) and answers membership
/// queries against its current conjectured equality relation.
struct PairHypothesis {
  std::function<bool(const Representation&, const Representation&)> claims_equal;
  std::uint64_t handle_id = 0;
};
using PairStepFn =
    std::function<PairHypothesis(const std::optional<std::pair<Representation, Representation>>&)>;
using PairLearnerFactory = std::function<PairStepFn()>;

/// Built-in: conjectures that every pair is equal.
inline PairLearnerFactory all_equal_pair_learner() {
  return []() -> PairStepFn {
    return [](const auto&) {
      PairHypothesis h;
      h.claims_equal = [](const Representation&, const Representation&) { return true; };
      h.handle_id = 1;
      return h;
    };
  };
}

/// Built-in: conjectures exactly the seen pairs plus reflexivity.
inline PairLearnerFactory seen_only_pair_learner() {
  return []() -> PairStepFn {
    auto seen = std::make_shared<std::set<std::pair<Representation, Representation>>>();
    return [seen](const std::optional<std::pair<Representation, Representation>>& d) {
      if (d) seen->insert({trim(d->first), trim(d->second)});
      PairHypothesis h;
      h.claims_equal = [seen](const Representation& a, const Representation& b) {
        Representation ta = trim(a), tb = trim(b);
        return ta == tb || seen->count({ta, tb}) || seen->count({tb, ta});
      };
      h.handle_id = seen->size();
      return h;
    };
  };
}

struct BcAdversaryReport {
  bool witness = false;
  std::vector<Rat> committed_beta;               // entries fixed by the adversary
  std::pair<Representation, Representation> falsified;
  std::size_t stages = 0;
  std::size_t steps_used = 0;
  std::string detail;
};

/// Budgeted realization of the diagonalization against BC learners of
/// equality relations.  Stage by stage the adversary feeds pairs that are
/// equal under the committed entries, then searches the learner's conjecture
/// for a claimed-equal pair of indicator shape (I_a(1), I_b(1)) over
/// uncommitted positions; committing 0 at position a-1 and p^-1 at position
/// b-1 falsifies the claim.
inline BcAdversaryReport bc_adversary(const PairLearnerFactory& factory,
                                      std::size_t budget, Int p = 2) {
  BcAdversaryReport rep;
  PairStepFn step = factory();
  std::vector<Rat> beta{Rat(1)};  // committed prefix; positions past it are free
  PairHypothesis hyp = step(std::nullopt);
  ++rep.steps_used;

  auto indicator_rep = [](std::size_t len) {
    Representation r(len, 0);
    r[len - 1] = 1;
    return r;
  };

  while (rep.steps_used < budget) {
    ++rep.stages;
    // Feed equal pairs over the committed prefix (padding with trailing
    // zeros, and scalar identities), keeping the text honest for E_beta.
    for (std::size_t j = 0; j < beta.size() && rep.steps_used < budget; ++j) {
      Representation a(j + 1, 0);
      a[j] = 1;
      Representation padded = a;
      padded.push_back(0);
      hyp = step(std::make_pair(a, padded));
      ++rep.steps_used;
    }
    // Search the conjecture for a falsifiable shape over free positions.
    std::size_t base = beta.size();
    for (std::size_t a = base + 1; a <= base + 6 && rep.steps_used < budget; ++a)
      for (std::size_t b = a + 1; b <= base + 7 && rep.steps_used < budget; ++b) {
        ++rep.steps_used;  // membership query costs a step
        Representation sa = indicator_rep(a), sb = indicator_rep(b);
        if (hyp.claims_equal(sa, sb)) {
          while (beta.size() < b) beta.push_back(Rat(0));
          beta[a - 1] = Rat(0);
          beta[b - 1] = Rat(1, p);
          rep.witness = true;
          rep.committed_beta = beta;
          rep.falsified = {sa, sb};
          rep.detail = "conjecture claims I_a(1) = I_b(1); committed entries 0 and 1/p refute it";
          return rep;
        }
      }
    // No claim to refute at this stage: commit one more zero entry and retry.
    beta.push_back(Rat(0));
    if (rep.stages > budget) break;
  }
  rep.committed_beta = beta;
  rep.detail = "budget exhausted: no falsifiable claimed-equal pair found";
  return rep;
}

}  // namespace randgroup
