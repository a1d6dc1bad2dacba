#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "randgroup/bitstream.hpp"
#include "randgroup/primes.hpp"
#include "randgroup/rational.hpp"
#include "randgroup/representation.hpp"
#include "randgroup/window.hpp"

namespace randgroup {

enum class Variant { core, mod1, fgsub, subring, prufer };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::core: return "core";
    case Variant::mod1: return "mod1";
    case Variant::fgsub: return "fgsub";
    case Variant::subring: return "subring";
    case Variant::prufer: return "prufer";
  }
  return "?";
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
  for (Variant v : {Variant::core, Variant::mod1, Variant::fgsub,
                    Variant::subring, Variant::prufer})
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

inline Int pow_int(Int base, std::size_t e) {
  Int r = 1;
  while (e--) r *= base;
  return r;
}

/// Metadata for one beta entry: unit prime-power fractions are subject to
/// invalidation when the approximated profile moves under them.
struct EntryInfo {
  bool unit_fraction = false;
  std::size_t prime_index = 0;
  std::size_t exponent = 0;
};

struct ChangeRecord {
  std::size_t stage = 0;
  std::size_t index = 0;
  Rat old_value, new_value;
};

/// Immutable per-stage snapshot: the capped window bound, the value-relevant
/// beta prefix, the full beta, and the window-vector value table.  Tables and
/// beta copies are shared between stages whenever nothing changed.
struct StageArchive {
  std::size_t stage = 0;
  int bound = 0;
  std::shared_ptr<const std::vector<Rat>> beta_full;
  std::shared_ptr<const std::vector<Rat>> values;  // aligned with window_vectors(bound)
};

struct GenSeqState {
  Variant variant = Variant::core;
  ApproximationSchedule schedule;
  std::size_t stage = 0;
  std::vector<Rat> beta;
  std::vector<EntryInfo> entry_info;
  ExponentProfile profile_view;  // run-length decode of R^s (core/mod1/fgsub)
  BitString mask_view;           // raw R^s (subring/prufer bitmask semantics)
  std::vector<ChangeRecord> change_log;
  std::vector<StageArchive> history;  // history[s] is the stage-s snapshot
  int window_cap = 4;
  std::size_t subring_prime_index = 0;  // fixed p for subring/prufer
  std::optional<SubgroupSpec> aux;      // fgsub target used by tests/enumerators

  bool subring_family() const {
    return variant == Variant::subring || variant == Variant::prufer;
  }
  bool has_entry_value(const Rat& v) const {
    return std::find(beta.begin(), beta.end(), v) != beta.end();
  }
};

// ---------------------------------------------------------------------------
// Replacement search
// ---------------------------------------------------------------------------

/// Literal-specification version: each currently-unequal window pair forbids
/// at most one rational; return the least nonnegative integer outside the
/// forbidden set.  Used as the brute-force oracle and for small windows.
inline Int replacement_integer(const std::vector<WindowPair>& window,
                               const std::vector<Rat>& beta, std::size_t position) {
  if (position >= beta.size())
    throw std::invalid_argument("replacement_integer: position out of range");
  std::set<Int> forbidden;
  for (const auto& pr : window) {
    std::size_t len = std::max(pr.sigma.size(), pr.tau.size());
    if (len > beta.size())
      throw std::invalid_argument("replacement_integer: pair longer than beta");
    if (position >= len) continue;
    long long dpos = (position < pr.sigma.size() ? pr.sigma[position] : 0) -
                     (position < pr.tau.size() ? pr.tau[position] : 0);
    if (dpos == 0) continue;
    Rat diff(0);
    for (std::size_t i = 0; i < len; ++i) {
      long long d = (i < pr.sigma.size() ? pr.sigma[i] : 0) -
                    (i < pr.tau.size() ? pr.tau[i] : 0);
      if (d != 0) diff += Rat(d) * beta[i];
    }
    if (diff == 0) continue;  // pair not actually unequal; nothing to preserve
    // New difference after substituting w: diff + dpos*(w - beta[position]).
    Rat bad = beta[position] - diff / Rat(dpos);
    if (is_integer(bad) && num(bad) >= 0) forbidden.insert(num(bad));
  }
  Int w = 0;
  while (forbidden.count(w)) ++w;
  return w;
}

/// Builder-facing version over the full capped window: iterates difference
/// vectors d (length <= bound, entries in [-2*bound, 2*bound]) instead of
/// pairs — every such d is a difference of two in-window vectors and vice
/// versa, so the forbidden set is identical to the pair formulation.
inline Int replacement_integer_fast(const std::vector<Rat>& beta,
                                    std::size_t position, int bound) {
  if (position >= beta.size())
    throw std::invalid_argument("replacement_integer_fast: position out of range");
  if (static_cast<int>(position) >= bound) return 0;  // window never sees it
  std::set<Int> forbidden;
  const int span = 2 * bound;
  std::vector<long long> d;
  Rat diff(0);
  auto recurse = [&](auto&& self, int len) -> void {
    if (len >= bound || len >= static_cast<int>(beta.size())) return;
    for (int e = -span; e <= span; ++e) {
      d.push_back(e);
      Rat saved = diff;
      if (e != 0) diff += Rat(e) * beta[static_cast<std::size_t>(len)];
      if (d.size() > position && d[position] != 0 && diff != 0) {
        Rat bad = beta[position] - diff / Rat(d[position]);
        if (is_integer(bad) && num(bad) >= 0) forbidden.insert(num(bad));
      }
      self(self, len + 1);
      diff = saved;
      d.pop_back();
    }
  };
  recurse(recurse, 0);
  Int w = 0;
  while (forbidden.count(w)) ++w;
  return w;
}

/// Least positive w with prime_power * w == 1 (mod p_i^s) for all i < l.
inline Int crt_unit_inverse(const Int& prime_power, std::size_t s, std::size_t l) {
  if (prime_power < 1) throw std::invalid_argument("crt_unit_inverse: bad prime power");
  if (s < 1) throw std::invalid_argument("crt_unit_inverse: stage must be >= 1");
  if (l < 1) throw std::invalid_argument("crt_unit_inverse: prime index must be >= 1");
  Int modulus = 1;
  for (std::size_t i = 0; i < l; ++i) modulus *= pow_int(Int(prime(i)), s);
  return mod_inverse(prime_power % modulus, modulus);
}

// ---------------------------------------------------------------------------
// Window monotonicity checks between consecutive archives
// ---------------------------------------------------------------------------

/// Unequal pairs of the earlier window stay unequal in the later one:
/// vectors sharing a value under `next` must share a value under `prev`.
inline bool delta_monotone(const StageArchive& prev, const StageArchive& next) {
  const auto& vecs = window_vectors(prev.bound);
  std::map<Rat, Rat> next_to_prev;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const Rat& nv = (*next.values)[window_index(vecs[i], next.bound)];
    const Rat& pv = (*prev.values)[i];
    auto [it, fresh] = next_to_prev.emplace(nv, pv);
    if (!fresh && it->second != pv) return false;
  }
  return true;
}

/// Mod-1 equalities of the earlier window persist: vectors sharing a
/// fractional part under `prev` must share one under `next`.
inline bool e_monotone(const StageArchive& prev, const StageArchive& next) {
  const auto& vecs = window_vectors(prev.bound);
  std::map<Rat, Rat> prev_to_next;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    Rat pf = frac_part((*prev.values)[i]);
    Rat nf = frac_part((*next.values)[window_index(vecs[i], next.bound)]);
    auto [it, fresh] = prev_to_next.emplace(pf, nf);
    if (!fresh && it->second != nf) return false;
  }
  return true;
}

/// Membership in <q/m> (optionally mod 1) persists from prev to next.
inline bool f_monotone(const StageArchive& prev, const StageArchive& next,
                       const SubgroupSpec& spec, bool mod1) {
  const auto& vecs = window_vectors(prev.bound);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const Rat& pv = (*prev.values)[i];
    const Rat& nv = (*next.values)[window_index(vecs[i], next.bound)];
    bool pin = mod1 ? is_integer(pv * Rat(spec.m)) : in_span(pv, spec);
    bool nin = mod1 ? is_integer(nv * Rat(spec.m)) : in_span(nv, spec);
    if (pin && !nin) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

namespace detail {

inline void archive_stage(GenSeqState& st) {
  StageArchive a;
  a.stage = st.stage;
  a.bound = static_cast<int>(std::min<std::size_t>(
      {st.stage + 1, static_cast<std::size_t>(st.window_cap), st.beta.size()}));
  const StageArchive* prev = st.history.empty() ? nullptr : &st.history.back();
  bool beta_same = prev && *prev->beta_full == st.beta;
  a.beta_full = beta_same ? prev->beta_full
                          : std::make_shared<const std::vector<Rat>>(st.beta);
  bool prefix_same = prev && prev->bound == a.bound &&
                     std::equal(st.beta.begin(), st.beta.begin() + a.bound,
                                prev->beta_full->begin());
  if (prefix_same) {
    a.values = prev->values;
  } else {
    a.values = window_values(a.bound, st.beta);
    if (prev) {
      bool ok = true;
      switch (st.variant) {
        case Variant::core:
        case Variant::subring: ok = delta_monotone(*prev, a); break;
        case Variant::mod1:
        case Variant::prufer: ok = e_monotone(*prev, a); break;
        case Variant::fgsub: break;  // F-monotonicity holds from s_F on; checked post hoc
      }
      if (!ok)
        throw std::logic_error("builder window regression at stage " +
                               std::to_string(st.stage));
    }
  }
  st.history.push_back(std::move(a));
}

/// True iff replacing beta[j] by v preserves every strict inequality of the
/// current capped window.
inline bool preserves_window_inequalities(const GenSeqState& st, std::size_t j,
                                          const Rat& v) {
  int bound = st.history.back().bound;
  if (static_cast<int>(j) >= bound) return true;
  std::vector<Rat> beta2 = st.beta;
  beta2[j] = v;
  StageArchive before, after;
  before.bound = after.bound = bound;
  before.values = window_values(bound, st.beta);
  after.values = window_values(bound, beta2);
  return delta_monotone(before, after);
}

inline void append_entry(GenSeqState& st, const Rat& v, EntryInfo info) {
  st.beta.push_back(v);
  st.entry_info.push_back(info);
}

inline void replace_entry(GenSeqState& st, std::size_t j, const Rat& v,
                          std::size_t at_stage) {
  st.change_log.push_back({at_stage, j, st.beta[j], v});
  st.beta[j] = v;
  st.entry_info[j] = EntryInfo{};
}

inline void step_core_family(GenSeqState& st) {
  const std::size_t s = st.stage;
  ExponentProfile prof_next = decode_profile(approx_prefix(st.schedule, s + 1));
  const int bound_now = st.history.back().bound;

  // Replace invalidated prime-power entries, left to right.
  for (std::size_t j = 0; j < st.beta.size(); ++j) {
    const EntryInfo& ei = st.entry_info[j];
    if (!ei.unit_fraction || prof_next.at(ei.prime_index) == ei.exponent) continue;
    Rat repl;
    switch (st.variant) {
      case Variant::core:
        repl = Rat(replacement_integer_fast(st.beta, j, bound_now));
        break;
      case Variant::mod1:
        repl = Rat(0);
        break;
      case Variant::fgsub: {
        if (ei.prime_index == 0) {
          repl = Rat(1);  // no smaller prime to respect; any unit works
        } else {
          Int pp = pow_int(Int(prime(ei.prime_index)), ei.exponent);
          repl = Rat(crt_unit_inverse(pp, std::max<std::size_t>(s, 1), ei.prime_index));
        }
        break;
      }
      default:
        throw std::logic_error("step_core_family: wrong variant");
    }
    replace_entry(st, j, repl, s + 1);
  }

  // Append the next unused prime-power generator ("j <= s+1 minimal"), else 1.
  Rat appended(1);
  EntryInfo info;
  for (std::size_t j = 0; j <= s + 1; ++j) {
    std::size_t n = prof_next.at(j);
    if (n == 0) continue;
    Rat cand(Int(1), pow_int(Int(prime(j)), n));
    if (!st.has_entry_value(cand)) {
      appended = cand;
      info = EntryInfo{true, j, n};
      break;
    }
  }
  append_entry(st, appended, info);

  st.profile_view = std::move(prof_next);
  st.stage = s + 1;
  archive_stage(st);
}

inline void step_subring_family(GenSeqState& st) {
  const std::size_t s = st.stage;
  const BitString& mask_next = approx_prefix(st.schedule, s + 1);

  // Step 2.a: hunt for a fresh invertible prime, then complete power ladders.
  std::size_t scan_limit = std::max(s + 1, st.schedule.stages.size());
  scan_limit = std::max(scan_limit, st.schedule.final_stage().size());
  std::optional<std::size_t> fresh;
  for (std::size_t sp = s + 1; sp <= scan_limit && !fresh; ++sp) {
    const BitString& r = approx_prefix(st.schedule, sp);
    for (std::size_t i = 0; i <= sp && i < r.size(); ++i) {
      if (bit_at(r, i) == 1 && !st.has_entry_value(Rat(Int(1), Int(prime(i))))) {
        fresh = i;
        break;
      }
    }
  }
  if (fresh)
    append_entry(st, Rat(Int(1), Int(prime(*fresh))),
                 *fresh == st.subring_prime_index
                     ? EntryInfo{}
                     : EntryInfo{true, *fresh, 1});
  std::set<std::size_t> active;
  active.insert(st.subring_prime_index);
  for (std::size_t j = 0; j < st.beta.size(); ++j)
    if (st.entry_info[j].unit_fraction && st.entry_info[j].exponent == 1)
      active.insert(st.entry_info[j].prime_index);
  for (std::size_t i : active) {
    for (std::size_t m = 1; m <= s + 1; ++m) {
      Rat cand(Int(1), pow_int(Int(prime(i)), m));
      if (!st.has_entry_value(cand))
        append_entry(st, cand,
                     i == st.subring_prime_index ? EntryInfo{}
                                                 : EntryInfo{true, i, m});
    }
  }

  // Steps 2.b / 2.c: replace invalidated entries until none remain.
  const Int p(prime(st.subring_prime_index));
  for (;;) {
    std::optional<std::size_t> j;
    for (std::size_t k = 0; k < st.beta.size(); ++k) {
      const EntryInfo& ei = st.entry_info[k];
      if (ei.unit_fraction && bit_at(mask_next, ei.prime_index) == 0) {
        j = k;
        break;
      }
    }
    if (!j) break;
    if (st.variant == Variant::prufer) {
      // Zero out every power of the invalidated prime at once; simultaneous
      // zeroing is what keeps established mod-1 equalities intact.
      std::size_t bad = st.entry_info[*j].prime_index;
      for (std::size_t k = 0; k < st.beta.size(); ++k)
        if (st.entry_info[k].unit_fraction && st.entry_info[k].prime_index == bad)
          replace_entry(st, k, Rat(0), s + 1);
    } else {
      // Fresh exponent beyond every existing power p^{-n'} keeps entry
      // values pairwise distinct; bump further until the inequality window
      // is preserved.  (A multiplicative gap would blow the exponents past
      // desk scale after a handful of replacements.)
      std::size_t max_np = 0;
      for (const Rat& v : st.beta) {
        if (num(v) != 1 || den(v) == 1) continue;
        Int d = den(v);
        std::size_t e = 0;
        while (d % p == 0) { d /= p; ++e; }
        if (d == 1) max_np = std::max(max_np, e);
      }
      std::size_t n = std::max(s + 2, max_np + 1);
      while (!preserves_window_inequalities(st, *j, Rat(Int(1), pow_int(p, n)))) ++n;
      replace_entry(st, *j, Rat(Int(1), pow_int(p, n)), s + 1);
    }
  }

  st.mask_view = mask_next;
  st.stage = s + 1;
  archive_stage(st);
}

}  // namespace detail

inline GenSeqState init_builder(Variant variant, ApproximationSchedule schedule,
                                std::optional<SubgroupSpec> aux = std::nullopt,
                                int window_cap = 4) {
  if (schedule.stages.empty())
    throw std::invalid_argument("init_builder: schedule has no stages");
  for (const auto& s : schedule.stages) validate_bits(s);
  GenSeqState st;
  st.variant = variant;
  st.schedule = std::move(schedule);
  st.window_cap = window_cap;
  st.aux = std::move(aux);
  if (variant == Variant::subring || variant == Variant::prufer) {
    const BitString& fin = st.schedule.final_stage();
    std::optional<std::size_t> p_idx;
    for (std::size_t i = 0; i < fin.size(); ++i)
      if (fin[i] == '1') { p_idx = i; break; }
    if (!p_idx)
      throw std::invalid_argument("init_builder: subring schedule selects no invertible prime");
    st.subring_prime_index = *p_idx;
    st.beta = {Rat(1), Rat(Int(1), Int(prime(*p_idx)))};
    st.entry_info = {EntryInfo{}, EntryInfo{}};  // fixed prime is exempt
    st.mask_view = approx_prefix(st.schedule, 0);
  } else {
    st.beta = {Rat(1)};
    st.entry_info = {EntryInfo{}};
    st.profile_view = decode_profile(approx_prefix(st.schedule, 0));
  }
  detail::archive_stage(st);
  return st;
}

inline GenSeqState step_builder(GenSeqState state) {
  if (state.subring_family())
    detail::step_subring_family(state);
  else
    detail::step_core_family(state);
  return state;
}

inline GenSeqState run_builder(Variant variant, ApproximationSchedule schedule,
                               std::size_t budget,
                               std::optional<SubgroupSpec> aux = std::nullopt,
                               int window_cap = 4) {
  GenSeqState st = init_builder(variant, std::move(schedule), std::move(aux), window_cap);
  for (std::size_t s = 0; s < budget; ++s) st = step_builder(std::move(st));
  return st;
}

// ---------------------------------------------------------------------------
// Stabilization stages
// ---------------------------------------------------------------------------

/// Least stage from which the decoded profile exponent n_i never moves again.
inline std::size_t profile_settle_stage(const ApproximationSchedule& sched,
                                        std::size_t i) {
  std::size_t n_final = decode_profile(sched.final_stage()).at(i);
  std::size_t settle = 0;
  for (std::size_t s = 0; s < sched.stages.size(); ++s)
    if (decode_profile(sched.stages[s]).at(i) != n_final) settle = s + 1;
  return settle;
}

/// The F_beta stabilization stage s_F for target <q/m>: all profile runs and
/// beta entries touching the primes of q*m are final, and the exponents of
/// q and m are within the stage number.
inline std::size_t stabilization_stage_sF(const GenSeqState& run,
                                          const SubgroupSpec& spec) {
  std::size_t sF = 1;
  auto fac = factor_indexed(spec.q * spec.m);
  for (auto [i, e] : fac) {
    sF = std::max(sF, profile_settle_stage(run.schedule, i));
    sF = std::max(sF, e);
    Int p(prime(i));
    for (const ChangeRecord& c : run.change_log)
      if (den(c.old_value) % p == 0 || den(c.new_value) % p == 0)
        sF = std::max(sF, c.stage);
  }
  return sF;
}

// ---------------------------------------------------------------------------
// Budgeted enumerations
// ---------------------------------------------------------------------------

/// Collapsed view of a run's archives: consecutive stages sharing a value
/// table form one layer.
struct BuilderRunView {
  struct Layer {
    std::size_t first_stage;
    int bound;
    std::shared_ptr<const std::vector<Rat>> values;
  };
  std::vector<Layer> layers;
  std::size_t budget = 0;

  explicit BuilderRunView(const GenSeqState& run, std::size_t budget_stages) {
    budget = std::min(budget_stages, run.history.size() - 1);
    for (std::size_t s = 0; s <= budget; ++s) {
      const StageArchive& a = run.history[s];
      if (layers.empty() || layers.back().values != a.values)
        layers.push_back({s, a.bound, a.values});
    }
  }

  const Layer& final_layer() const { return layers.back(); }

  /// Last stage covered by layer li.
  std::size_t layer_end(std::size_t li) const {
    return li + 1 < layers.size() ? layers[li + 1].first_stage - 1 : budget;
  }

  std::optional<Rat> value_at(const Layer& l, const Representation& v) const {
    if (!in_window(v, l.bound)) return std::nullopt;
    return (*l.values)[window_index(v, l.bound)];
  }
};

/// Lazily queryable stream of Delta pairs (unequal representations).
struct NeqEnumeration {
  BuilderRunView view;

  NeqEnumeration(const GenSeqState& run, std::size_t budget) : view(run, budget) {
    if (run.variant != Variant::core && run.variant != Variant::subring)
      throw std::invalid_argument("enumerate_neq requires the core or subring variant");
  }

  std::optional<std::size_t> stage_found(const Representation& s,
                                         const Representation& t) const {
    for (const auto& l : view.layers) {
      auto a = view.value_at(l, s), b = view.value_at(l, t);
      if (a && b && *a != *b) return l.first_stage;
    }
    return std::nullopt;
  }
  bool contains(const Representation& s, const Representation& t) const {
    return stage_found(s, t).has_value();
  }

  /// Emit pairs in stage order (deduplicated); stops after `limit` pairs.
  template <class Fn>
  void for_each(std::size_t limit, Fn&& fn) const {
    std::size_t emitted = 0;
    for (const auto& l : view.layers) {
      const auto& vecs = window_vectors(l.bound);
      for (std::size_t i = 0; i < vecs.size() && emitted < limit; ++i)
        for (std::size_t j = i + 1; j < vecs.size() && emitted < limit; ++j) {
          if ((*l.values)[i] == (*l.values)[j]) continue;
          auto first = stage_found(vecs[i], vecs[j]);
          if (first && *first == l.first_stage) {
            fn(WindowPair{vecs[i], vecs[j], l.first_stage});
            ++emitted;
          }
        }
      if (emitted >= limit) return;
    }
  }
};

/// Lazily queryable stream of E pairs (equal mod 1).
struct EqMod1Enumeration {
  BuilderRunView view;

  EqMod1Enumeration(const GenSeqState& run, std::size_t budget) : view(run, budget) {
    if (run.variant != Variant::mod1 && run.variant != Variant::prufer)
      throw std::invalid_argument("enumerate_eq_mod1 requires the mod1 or prufer variant");
  }

  std::optional<std::size_t> stage_found(const Representation& s,
                                         const Representation& t) const {
    for (const auto& l : view.layers) {
      auto a = view.value_at(l, s), b = view.value_at(l, t);
      if (a && b && frac_part(*a) == frac_part(*b)) return l.first_stage;
    }
    return std::nullopt;
  }
  bool contains(const Representation& s, const Representation& t) const {
    return stage_found(s, t).has_value();
  }

  template <class Fn>
  void for_each(std::size_t limit, Fn&& fn) const {
    std::size_t emitted = 0;
    for (const auto& l : view.layers) {
      const auto& vecs = window_vectors(l.bound);
      for (std::size_t i = 0; i < vecs.size() && emitted < limit; ++i)
        for (std::size_t j = i + 1; j < vecs.size() && emitted < limit; ++j) {
          if (frac_part((*l.values)[i]) != frac_part((*l.values)[j])) continue;
          auto first = stage_found(vecs[i], vecs[j]);
          if (first && *first == l.first_stage) {
            fn(WindowPair{vecs[i], vecs[j], l.first_stage});
            ++emitted;
          }
        }
      if (emitted >= limit) return;
    }
  }
};

/// Stream of representations of F = <q/m> members (fgsub; prufer uses the
/// mod-1 reading).  Emission starts at the stabilization stage s_F.
struct SubgroupRepsEnumeration {
  BuilderRunView view;
  SubgroupSpec spec;
  bool mod1 = false;
  std::size_t start_stage = 0;

  SubgroupRepsEnumeration(const GenSeqState& run, SubgroupSpec sp, std::size_t budget)
      : view(run, budget), spec(sp) {
    if (run.variant != Variant::fgsub && run.variant != Variant::prufer)
      throw std::invalid_argument(
          "enumerate_subgroup_reps requires the fgsub or prufer variant");
    if (sp.trivial())
      throw std::invalid_argument("enumerate_subgroup_reps: trivial target");
    mod1 = run.variant == Variant::prufer;
    start_stage = mod1 ? 0 : stabilization_stage_sF(run, sp);
  }

  bool member(const Rat& v) const {
    return mod1 ? is_integer(v * Rat(spec.m)) : in_span(v, spec);
  }

  std::optional<std::size_t> stage_found(const Representation& s) const {
    for (std::size_t li = 0; li < view.layers.size(); ++li) {
      const auto& l = view.layers[li];
      std::size_t eff = std::max(l.first_stage, start_stage);
      if (eff > view.layer_end(li)) continue;
      auto a = view.value_at(l, s);
      if (a && member(*a)) return eff;
    }
    return std::nullopt;
  }
  bool contains(const Representation& s) const { return stage_found(s).has_value(); }

  template <class Fn>
  void for_each(std::size_t limit, Fn&& fn) const {
    std::size_t emitted = 0;
    for (std::size_t li = 0; li < view.layers.size() && emitted < limit; ++li) {
      const auto& l = view.layers[li];
      const auto& vecs = window_vectors(l.bound);
      for (std::size_t i = 0; i < vecs.size() && emitted < limit; ++i) {
        if (!member((*l.values)[i])) continue;
        auto first = stage_found(vecs[i]);
        if (first && *first >= std::max(l.first_stage, start_stage) &&
            *first <= view.layer_end(li)) {
          fn(vecs[i]);
          ++emitted;
        }
      }
    }
  }
};

/// Stream of representations provably outside F (subring co-r.e. direction).
struct SubringComplementEnumeration {
  BuilderRunView view;
  SubgroupSpec spec;
  std::size_t start_stage = 0;  // governing stage s1

  SubringComplementEnumeration(const GenSeqState& run, SubgroupSpec sp,
                               std::size_t budget)
      : view(run, budget), spec(sp) {
    if (run.variant != Variant::subring)
      throw std::invalid_argument(
          "enumerate_subring_complement requires the subring variant");
    if (sp.trivial())
      throw std::invalid_argument("enumerate_subring_complement: trivial target");
    start_stage = governing_stage(run, sp, view.budget);
  }

  /// s1: the first stage whose beta prefix up to s0 is final, where s0 bounds
  /// the positions past which no entry lies in F and below which some power
  /// p^{-n'} with p^{n'} not dividing m occurs.
  static std::size_t governing_stage(const GenSeqState& run, const SubgroupSpec& sp,
                                     std::size_t budget) {
    const auto& fin = *run.history[budget].beta_full;
    Int p(prime(run.subring_prime_index));
    std::size_t s0 = 0;
    bool have_power = false;
    for (std::size_t j = 0; j < fin.size(); ++j) {
      if (in_span(fin[j], sp)) s0 = std::max(s0, j + 1);
      if (!have_power && num(fin[j]) == 1 && den(fin[j]) != 1) {
        Int d = den(fin[j]);
        std::size_t e = 0;
        while (d % p == 0) { d /= p; ++e; }
        if (d == 1 && sp.m % pow_int(p, e) != 0) {  // p^e does not divide m
          have_power = true;
          s0 = std::max(s0, j + 1);
        }
      }
    }
    if (!have_power) s0 = fin.size();  // degenerate; stay sound
    for (std::size_t s = 0; s <= budget; ++s) {
      const auto& b = *run.history[s].beta_full;
      if (b.size() < s0) continue;
      if (std::equal(b.begin(), b.begin() + s0, fin.begin())) return s;
    }
    return budget;
  }

  std::optional<std::size_t> stage_found(const Representation& s) const {
    for (std::size_t li = 0; li < view.layers.size(); ++li) {
      const auto& l = view.layers[li];
      std::size_t eff = std::max(l.first_stage, start_stage);
      if (eff > view.layer_end(li)) continue;
      auto a = view.value_at(l, s);
      if (a && !in_span(*a, spec)) return eff;
    }
    return std::nullopt;
  }
  bool contains(const Representation& s) const { return stage_found(s).has_value(); }
};

/// build_prufer_genseq: the Prüfer join builder is the subring machinery run
/// over mod-1 arithmetic.
inline GenSeqState build_prufer_genseq(ApproximationSchedule schedule,
                                       std::size_t budget, int window_cap = 4) {
  return run_builder(Variant::prufer, std::move(schedule), budget, std::nullopt,
                     window_cap);
}

}  // namespace randgroup
