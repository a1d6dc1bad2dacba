#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "randgroup/census.hpp"
#include "randgroup/genseq.hpp"
#include "randgroup/representation.hpp"

namespace randgroup {

// ---------------------------------------------------------------------------
// Hypotheses
// ---------------------------------------------------------------------------

/// A learner conjecture.  `handle_id` is the syntactic identity of the
/// conjectured index; semantic identity is decided by semantic_eq.
struct Hypothesis {
  enum class Kind { Default, Subgroup, Mod1Subgroup, ResidueSet, EqualityComplement };
  Kind kind = Kind::Default;
  SubgroupSpec spec;                       // Subgroup / Mod1Subgroup
  std::set<Rat> residues;                  // ResidueSet
  std::size_t pivot = 0;                   // EqualityComplement
  std::map<std::size_t, Rat> multipliers;  // position -> b_d / b_pivot (0 = known zero)
  std::uint64_t handle_id = 0;

  static Hypothesis subgroup(SubgroupSpec s, std::uint64_t id) {
    Hypothesis h;
    h.kind = Kind::Subgroup;
    h.spec = s;
    h.handle_id = id;
    return h;
  }
};

inline bool syntactic_eq(const Hypothesis& a, const Hypothesis& b) {
  return a.kind == b.kind && a.handle_id == b.handle_id;
}

inline std::set<Rat> mod1_residue_set(const SubgroupSpec& spec) {
  std::set<Rat> out;
  for (Int k = 0; k < spec.m; ++k) out.insert(frac_part(Rat(k * spec.q, spec.m)));
  return out;
}

/// Relation induced by an EqualityComplement handle on window vectors that
/// only touch determined positions; nullopt when the vector is undetermined.
inline std::optional<Rat> eqc_relative_value(const Hypothesis& h, const Representation& v) {
  Rat acc(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (i == h.pivot) {
      acc += Rat(v[i]);
    } else {
      auto it = h.multipliers.find(i);
      if (it == h.multipliers.end()) return std::nullopt;
      acc += Rat(v[i]) * it->second;
    }
  }
  return acc;
}

inline bool semantic_eq(const Hypothesis& a, const Hypothesis& b, int census_bound = 3) {
  using K = Hypothesis::Kind;
  if (a.kind == K::Default || b.kind == K::Default) return a.kind == b.kind;
  if (a.kind == K::Subgroup && b.kind == K::Subgroup) return a.spec == b.spec;
  if (a.kind == K::Mod1Subgroup && b.kind == K::Mod1Subgroup)
    return a.spec.m == b.spec.m;  // residue sets depend on m alone (gcd(q,m)=1)
  if ((a.kind == K::Mod1Subgroup && b.kind == K::ResidueSet) ||
      (a.kind == K::ResidueSet && b.kind == K::Mod1Subgroup)) {
    const Hypothesis& sub = a.kind == K::Mod1Subgroup ? a : b;
    const Hypothesis& res = a.kind == K::Mod1Subgroup ? b : a;
    return mod1_residue_set(sub.spec) == res.residues;
  }
  if (a.kind == K::ResidueSet && b.kind == K::ResidueSet) return a.residues == b.residues;
  if (a.kind == K::EqualityComplement && b.kind == K::EqualityComplement) {
    for (const auto& s : window_vectors(census_bound))
      for (const auto& t : window_vectors(census_bound)) {
        auto as = eqc_relative_value(a, s), at = eqc_relative_value(a, t);
        auto bs = eqc_relative_value(b, s), bt = eqc_relative_value(b, t);
        if (!as || !at || !bs || !bt) continue;  // compare on shared determined part
        if ((*as == *at) != (*bs == *bt)) return false;
      }
    return true;
  }
  return false;  // incomparable kinds
}

// ---------------------------------------------------------------------------
// Texts
// ---------------------------------------------------------------------------

struct TextItem {
  bool pause = true;
  Representation datum;

  static TextItem pause_item() { return {}; }
  static TextItem of(Representation r) { return {false, std::move(r)}; }
};

struct Text {
  std::vector<TextItem> items;
  SubgroupSpec target;
  int fairness_bound = 0;  // every target member within this window occurs
};

/// Build a representation of value x over the run's final beta, using one
/// unit-fraction entry per denominator prime (CRT on the coefficients).
/// Throws when the final beta cannot express x.
inline Representation repr_of_value(const Rat& x, const std::vector<Rat>& beta) {
  // Map prime -> (position, exponent) over current unit-fraction entries,
  // preferring the largest exponent.
  std::map<Int, std::pair<std::size_t, std::size_t>> units;
  for (std::size_t j = 1; j < beta.size(); ++j) {
    if (num(beta[j]) != 1 || den(beta[j]) == 1) continue;
    auto fac = factor_indexed(den(beta[j]));
    if (fac.size() != 1) continue;
    Int p(prime(fac[0].first));
    std::size_t e = fac[0].second;
    auto it = units.find(p);
    if (it == units.end() || it->second.second < e) units[p] = {j, e};
  }
  if (beta.empty() || beta[0] != 1)
    throw std::invalid_argument("repr_of_value: beta(0) must be 1");

  std::vector<std::pair<std::size_t, std::size_t>> denom = factor_indexed(den(x));
  std::vector<std::pair<std::size_t, Int>> coeffs;  // (position, coefficient)
  Int D = 1;
  std::vector<Int> unit_mod;  // p^{N} for each chosen entry
  std::vector<std::size_t> unit_pos;
  for (auto [i, e] : denom) {
    Int p(prime(i));
    auto it = units.find(p);
    if (it == units.end() || it->second.second < e)
      throw std::invalid_argument("repr_of_value: value not expressible over beta");
    Int pN = pow_int(p, it->second.second);
    D *= pN;
    unit_mod.push_back(pN);
    unit_pos.push_back(it->second.first);
  }
  Rat scaled = x * Rat(D);
  if (!is_integer(scaled))
    throw std::logic_error("repr_of_value: denominator cover failed");
  Int A = num(scaled);
  Int rest = A;
  std::size_t max_pos = 0;
  for (std::size_t k = 0; k < unit_mod.size(); ++k) {
    Int Dk = D / unit_mod[k];
    Int ck = (A % unit_mod[k]) * mod_inverse(Dk % unit_mod[k], unit_mod[k]) % unit_mod[k];
    if (ck < 0) ck += unit_mod[k];
    coeffs.emplace_back(unit_pos[k], ck);
    rest -= ck * Dk;
    max_pos = std::max(max_pos, unit_pos[k]);
  }
  if (rest % D != 0) throw std::logic_error("repr_of_value: CRT failure");
  Int c0 = rest / D;
  Representation out(max_pos + 1, 0);
  auto checked = [](const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
      throw std::overflow_error("repr_of_value: coefficient exceeds desk scale");
    return static_cast<long long>(v);
  };
  out[0] = checked(c0);
  for (auto& [pos, c] : coeffs) out[pos] += checked(c);
  return trim(out);
}

/// Coordinate-wise sum and scaling of representations.
inline Representation repr_add(const Representation& a, const Representation& b) {
  Representation out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(out);
}
inline Representation repr_scale(const Representation& a, long long k) {
  Representation out = a;
  for (auto& e : out) e *= k;
  return trim(out);
}

/// Deterministic fair text for <q/m> over a finished builder run.  The
/// informative members (generator and denominator witnesses) and the whole
/// fairness window are shuffled into the first 70% of the text; the tail is
/// filled with seeded member combinations and occasional pauses.
inline Text canonical_text(const SubgroupSpec& spec, const GenSeqState& run,
                           std::uint64_t seed, std::size_t length, bool mod1 = false) {
  if (spec.trivial()) throw std::invalid_argument("canonical_text: empty target");
  const auto& beta = *run.history.back().beta_full;
  std::vector<Representation> required;

  if (mod1) {
    Representation gen = repr_of_value(spec.generator(), beta);
    for (Int k = 0; k < spec.m; ++k) {
      if (k > 8 && k != spec.m - 1) continue;  // residues still all covered below
      required.push_back(repr_scale(gen, static_cast<long long>(k)));
    }
    for (Int k = 9; k < spec.m - 1; ++k)
      required.push_back(repr_scale(gen, static_cast<long long>(k)));
  } else {
    auto q_ll = static_cast<long long>(spec.q);
    required.push_back(Representation{q_ll});
    // One witness per unit-fraction entry whose value scales into the target:
    // the least t with t*q*beta_j in <q/m> is den(m*beta_j).  Entries needing
    // a multiplier beyond desk scale carry no usable witness and are skipped.
    for (std::size_t j = 1; j < beta.size(); ++j) {
      if (num(beta[j]) != 1 || den(beta[j]) == 1) continue;
      Int t = den(Rat(spec.m) * beta[j]);
      if (q_ll * t > (Int(1) << 40)) continue;
      Representation r(j + 1, 0);
      r[j] = static_cast<long long>(q_ll * t);
      required.push_back(std::move(r));
    }
  }

  // Fairness window: the largest bound whose member list fits in 70%.
  const WindowCensus census = window_census(beta, run.history.back().bound);
  std::vector<Representation> members;
  int fairness = 0;
  for (int w = census.bound; w >= 0; --w) {
    WindowCensus c = window_census(beta, w);
    auto ms = c.members(spec, mod1);
    if (required.size() + ms.size() <= (length * 7) / 10) {
      members = std::move(ms);
      fairness = w;
      break;
    }
  }
  std::vector<Representation> head = required;
  head.insert(head.end(), members.begin(), members.end());
  if (head.size() > length)
    throw std::invalid_argument("canonical_text: length too small for fairness window");

  std::mt19937_64 rng(seed);
  std::shuffle(head.begin(), head.end(), rng);
  Text text;
  text.target = spec;
  text.fairness_bound = fairness;
  for (auto& r : head) text.items.push_back(TextItem::of(std::move(r)));
  std::vector<Representation> pool = required;
  while (text.items.size() < length) {
    if (rng() % 10 == 0) {
      text.items.push_back(TextItem::pause_item());
      continue;
    }
    const Representation& a = pool[rng() % pool.size()];
    const Representation& b = pool[rng() % pool.size()];
    long long c1 = static_cast<long long>(rng() % 4);
    long long c2 = static_cast<long long>(rng() % 4);
    text.items.push_back(TextItem::of(repr_add(repr_scale(a, c1), repr_scale(b, c2))));
  }
  return text;
}

// ---------------------------------------------------------------------------
// BC learner (fgsub class)
// ---------------------------------------------------------------------------

struct BcLearnerState {
  std::vector<Int> singletons;                             // |w| with (w) seen
  std::vector<std::pair<std::size_t, Int>> witnesses;      // (position j>=1, coefficient>0)
  std::size_t steps = 0;
};

/// One step of the BC learner.  q' = gcd of singletons; the denominator is
/// the product over witnessed positions of p_i^{h'_i - h_i} per the witness
/// conditions (1)-(4); the emitted handle is stage-stamped.
inline Hypothesis bc_learner_step(BcLearnerState& st, const TextItem& item,
                                  const GenSeqState& run) {
  if (run.variant != Variant::fgsub)
    throw std::invalid_argument("bc_learner_step: builder variant must be fgsub");
  ++st.steps;
  if (!item.pause) {
    Representation d = trim(item.datum);
    std::size_t nz = 0, pos = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) { ++nz; pos = i; }
    if (nz == 1) {
      if (pos == 0) {
        Int a(d[0] < 0 ? -d[0] : d[0]);
        if (a != 0) st.singletons.push_back(a);
      } else if (d[pos] > 0) {
        st.witnesses.emplace_back(pos, Int(d[pos]));
      }
    }
  }

  Int qp = 0;
  for (const Int& a : st.singletons) qp = boost::multiprecision::gcd(qp, a);
  if (qp == 0) return Hypothesis::subgroup(make_spec(1, 1), st.steps);

  const auto& beta = *run.history.back().beta_full;
  std::map<std::size_t, std::size_t> min_h;  // position -> minimal h seen (cond. 4)
  std::map<std::size_t, std::pair<Int, std::size_t>> unit;  // position -> (p_i, h')
  for (auto& [j, c] : st.witnesses) {
    if (j >= beta.size() || num(beta[j]) != 1 || den(beta[j]) == 1) continue;
    auto fac = factor_indexed(den(beta[j]));
    if (fac.size() != 1) continue;                     // condition (3): b_j = p_i^{-h'}
    Int p(prime(fac[0].first));
    if (boost::multiprecision::gcd(qp, p) != 1) continue;  // condition (1)
    if (c % qp != 0) continue;                         // shape q' * p^h
    Int rest = c / qp;
    std::size_t h = 0;
    while (rest % p == 0) { rest /= p; ++h; }
    if (rest != 1) continue;
    if (h > fac[0].second) continue;                   // condition (3): h' >= h
    auto it = min_h.find(j);
    if (it == min_h.end() || h < it->second) min_h[j] = h;
    unit[j] = {p, fac[0].second};
  }
  Int m = 1;
  for (auto& [j, h] : min_h) m *= pow_int(unit[j].first, unit[j].second - h);
  return Hypothesis::subgroup(make_spec(qp, m), st.steps);
}

// ---------------------------------------------------------------------------
// mod-1 BC learner
// ---------------------------------------------------------------------------

struct Mod1BcState {
  std::set<Rat> residues;
};

/// Conjectures the closure under mod-1 equality of everything seen; the
/// closure is represented by its residue set.  The handle changes exactly
/// when a new residue appears.
inline Hypothesis mod1_bc_learner_step(Mod1BcState& st, const TextItem& item,
                                       const GenSeqState& run) {
  if (run.variant != Variant::mod1 && run.variant != Variant::prufer)
    throw std::invalid_argument("mod1_bc_learner_step: variant must be mod1 or prufer");
  const auto& beta = *run.history.back().beta_full;
  if (!item.pause) st.residues.insert(frac_part(repr_value(item.datum, beta)));
  Hypothesis h;
  h.kind = Hypothesis::Kind::ResidueSet;
  h.residues = st.residues;
  h.handle_id = st.residues.size();
  return h;
}

// ---------------------------------------------------------------------------
// Ex[K] learner with emulated exact-equality oracle
// ---------------------------------------------------------------------------

/// The K-oracle, emulated from the harness's ground-truth final beta.
struct EqualityOracle {
  std::vector<Rat> beta;

  explicit EqualityOracle(const GenSeqState& run)
      : beta(*run.history.back().beta_full) {}

  bool equal(const Representation& a, const Representation& b) const {
    return repr_value(a, beta) == repr_value(b, beta);
  }
  bool is_zero(const Representation& a) const { return repr_value(a, beta) == 0; }
  /// A representation rho' with j * rho' = rho (in value); K-search emulated.
  Representation divide(const Representation& rho, long long j) const {
    return repr_of_value(repr_value(rho, beta) / Rat(j), beta);
  }
  SubgroupSpec canonical_spec(const Representation& rho) const {
    return reduce_generator({repr_value(rho, beta)});
  }
};

struct ExkState {
  std::optional<Representation> rho;
};

inline std::uint64_t spec_hash(const SubgroupSpec& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : rat_to_string(s.generator())) h = (h ^ (unsigned char)c) * 1099511628211ull;
  return h;
}

/// The rho-chain learner: combine the current generator candidate with each
/// new datum through coprime (i, j) found by oracle queries, then divide.
/// The hypothesis handle is the canonical reduced (q,m) — syntactically
/// stable once the chain settles.
inline Hypothesis exk_learner_step(ExkState& st, const TextItem& item,
                                   const EqualityOracle& oracle,
                                   long long search_bound = 1 << 14) {
  if (!item.pause && !oracle.is_zero(item.datum)) {
    Representation a = trim(item.datum);
    if (!st.rho) {
      st.rho = a;
    } else if (!oracle.equal(repr_scale(a, 0), a)) {
      // find coprime (i, j), i in Z \ {0}, j >= 1, with i*rho = j*a
      bool found = false;
      for (long long total = 2; total <= search_bound && !found; ++total) {
        for (long long j = 1; j < total && !found; ++j) {
          long long i = total - j;
          if (std::gcd(i, j) != 1) continue;
          for (long long sign : {1, -1}) {
            if (oracle.equal(repr_scale(*st.rho, sign * i), repr_scale(a, j))) {
              st.rho = oracle.divide(*st.rho, j);
              found = true;
              break;
            }
          }
        }
      }
      if (!found)
        throw std::runtime_error(
            "exk_learner_step: oracle search exhausted (ratio outside bound)");
    }
  }
  if (!st.rho) return Hypothesis{};  // degenerate start: default placeholder
  SubgroupSpec s = oracle.canonical_spec(*st.rho);
  return Hypothesis::subgroup(s, spec_hash(s));
}

// ---------------------------------------------------------------------------
// Equality-class learner (E_1, co-r.e. equality)
// ---------------------------------------------------------------------------

struct EqClassState {
  std::set<std::pair<Representation, Representation>> seen;
};

inline Representation indicator(std::size_t len, long long v) {
  Representation r(len, 0);
  if (len > 0) r[len - 1] = v;
  return r;
}

/// Pairs (sigma, tau) from E_beta drive the reconstruction: the pivot is the
/// least position not known to be zero; multipliers b_d / b_pivot come from
/// single-coordinate pairs anchored at the pivot.
inline Hypothesis equality_class_learner_step(EqClassState& st,
                                              const std::optional<std::pair<Representation, Representation>>& datum) {
  if (datum) st.seen.insert({trim(datum->first), trim(datum->second)});

  auto single = [](const Representation& r) -> std::optional<std::pair<std::size_t, long long>> {
    std::size_t nz = 0, pos = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) { ++nz; pos = i; }
    if (nz != 1) return std::nullopt;
    return std::make_pair(pos, r[pos]);
  };

  std::set<std::size_t> zeros;
  for (const auto& [a, b] : st.seen) {
    if (a.empty()) {
      if (auto s = single(b)) zeros.insert(s->first);
    } else if (b.empty()) {
      if (auto s = single(a)) zeros.insert(s->first);
    }
  }
  std::size_t pivot = 0;
  while (zeros.count(pivot)) ++pivot;

  Hypothesis h;
  h.kind = Hypothesis::Kind::EqualityComplement;
  h.pivot = pivot;
  for (std::size_t z : zeros) h.multipliers[z] = Rat(0);
  for (const auto& [a, b] : st.seen) {
    auto sa = single(a), sb = single(b);
    if (!sa || !sb) continue;
    // q * b_{pos_a} = r * b_{pos_b}
    if (sa->first == pivot && sb->first != pivot && sb->second != 0)
      h.multipliers[sb->first] = Rat(sa->second) / Rat(sb->second);
    if (sb->first == pivot && sa->first != pivot && sa->second != 0)
      h.multipliers[sa->first] = Rat(sb->second) / Rat(sa->second);
  }
  std::uint64_t id = pivot * 1315423911ull;
  for (auto& [d, mu] : h.multipliers)
    id = id * 31 + d * 7 + std::hash<std::string>{}(rat_to_string(mu));
  h.handle_id = id;
  return h;
}

// ---------------------------------------------------------------------------
// Conservative subring Ex learner
// ---------------------------------------------------------------------------

struct SubringExState {
  std::vector<Int> singletons;
  std::vector<std::pair<std::size_t, Int>> witnesses;  // (position, coefficient)
  std::vector<Representation> seen;
  std::optional<Hypothesis> prev;
};

/// d = gcd of singletons; the denominator is the product of max witnessed
/// prime powers; s0 is the least stage past which no seen datum is ever
/// outside the candidate.  Conservative: a differing candidate is adopted
/// only when some seen datum refutes the previous hypothesis.
inline Hypothesis subring_ex_learner_step(SubringExState& st, const TextItem& item,
                                          const GenSeqState& run) {
  if (run.variant != Variant::subring)
    throw std::invalid_argument("subring_ex_learner_step: variant must be subring");
  const auto& beta = *run.history.back().beta_full;
  if (!item.pause) {
    Representation d = trim(item.datum);
    st.seen.push_back(d);
    std::size_t nz = 0, pos = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) { ++nz; pos = i; }
    if (nz == 1) {
      if (pos == 0) {
        Int a(d[0] < 0 ? -d[0] : d[0]);
        if (a != 0) st.singletons.push_back(a);
      } else if (d[pos] > 0) {
        st.witnesses.emplace_back(pos, Int(d[pos]));
      }
    }
  }

  Int dgcd = 0;
  for (const Int& a : st.singletons) dgcd = boost::multiprecision::gcd(dgcd, a);
  Hypothesis cand;
  if (dgcd == 0) {
    cand = Hypothesis{};  // no singleton yet
  } else {
    std::map<Int, std::size_t> max_e;  // prime -> max witnessed exponent
    for (auto& [j, c] : st.witnesses) {
      if (c != dgcd) continue;  // witnesses are I_{j+1}(d)
      if (j >= beta.size() || num(beta[j]) != 1 || den(beta[j]) == 1) continue;
      auto fac = factor_indexed(den(beta[j]));
      if (fac.size() != 1) continue;
      Int p(prime(fac[0].first));
      auto it = max_e.find(p);
      if (it == max_e.end() || it->second < fac[0].second) max_e[p] = fac[0].second;
    }
    Int m = 1;
    for (auto& [p, e] : max_e) m *= pow_int(p, e);
    SubgroupSpec s = make_spec(dgcd, m);
    // s0: least archived stage from which every seen datum stays inside.
    std::size_t s0 = 0;
    for (std::size_t t = run.history.size(); t-- > 0;) {
      bool all_in = true;
      const auto& bt = *run.history[t].beta_full;
      for (const auto& sig : st.seen) {
        if (sig.size() > bt.size()) continue;  // stage too short to evaluate
        if (!in_span(repr_value(sig, bt), s)) { all_in = false; break; }
      }
      if (!all_in) { s0 = t + 1; break; }
    }
    cand = Hypothesis::subgroup(s, spec_hash(s) * 31 + s0);
    cand.pivot = s0;  // carried as part of the co-r.e. handle
  }

  if (st.prev && !syntactic_eq(*st.prev, cand)) {
    bool contradiction = false;
    if (st.prev->kind == Hypothesis::Kind::Subgroup) {
      for (const auto& sig : st.seen)
        if (!in_span(repr_value(sig, beta), st.prev->spec)) { contradiction = true; break; }
    } else {
      contradiction = true;  // leaving the default costs nothing
    }
    if (!contradiction) return *st.prev;  // conservative: keep the old guess
  }
  st.prev = cand;
  return cand;
}

// ---------------------------------------------------------------------------
// Type-erased step learners (used by texts, traces, adversaries)
// ---------------------------------------------------------------------------

using StepFn = std::function<Hypothesis(const TextItem&)>;
using LearnerFactory = std::function<StepFn()>;

inline LearnerFactory make_bc_factory(const GenSeqState& run) {
  return [&run]() -> StepFn {
    auto st = std::make_shared<BcLearnerState>();
    return [st, &run](const TextItem& it) { return bc_learner_step(*st, it, run); };
  };
}
inline LearnerFactory make_mod1bc_factory(const GenSeqState& run) {
  return [&run]() -> StepFn {
    auto st = std::make_shared<Mod1BcState>();
    return [st, &run](const TextItem& it) { return mod1_bc_learner_step(*st, it, run); };
  };
}
inline LearnerFactory make_exk_factory(const GenSeqState& run) {
  auto oracle = std::make_shared<EqualityOracle>(run);
  return [oracle]() -> StepFn {
    auto st = std::make_shared<ExkState>();
    return [st, oracle](const TextItem& it) { return exk_learner_step(*st, it, *oracle); };
  };
}
inline LearnerFactory make_subring_ex_factory(const GenSeqState& run) {
  return [&run]() -> StepFn {
    auto st = std::make_shared<SubringExState>();
    return [st, &run](const TextItem& it) { return subring_ex_learner_step(*st, it, run); };
  };
}

/// Run a learner over a text, recording one hypothesis per step.
inline std::vector<Hypothesis> run_learner(const LearnerFactory& factory, const Text& text) {
  StepFn step = factory();
  std::vector<Hypothesis> out;
  out.reserve(text.items.size());
  for (const auto& item : text.items) out.push_back(step(item));
  return out;
}

}  // namespace randgroup
