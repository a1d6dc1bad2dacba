#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "randgroup/genseq.hpp"
#include "randgroup/representation.hpp"
#include "randgroup/window.hpp"

namespace randgroup {

/// Ground-truth relations over the window of a fixed (stabilized) beta:
/// equality, mod-1 equality, and <q/m> membership, all by exact arithmetic.
/// This is the master oracle for the acceptance checks.
struct WindowCensus {
  int bound = 0;
  std::vector<Rat> beta_prefix;
  std::shared_ptr<const std::vector<Rat>> values;  // aligned with window_vectors(bound)

  const Rat& value(const Representation& v) const {
    return (*values)[window_index(v, bound)];
  }
  bool equal(const Representation& a, const Representation& b) const {
    return value(a) == value(b);
  }
  bool equal_mod1(const Representation& a, const Representation& b) const {
    return frac_part(value(a)) == frac_part(value(b));
  }
  bool member(const Representation& v, const SubgroupSpec& spec, bool mod1 = false) const {
    return mod1 ? is_integer(value(v) * Rat(spec.m)) : in_span(value(v), spec);
  }

  /// All window vectors whose value lies in <q/m> (optionally mod 1).
  std::vector<Representation> members(const SubgroupSpec& spec, bool mod1 = false) const {
    std::vector<Representation> out;
    const auto& vecs = window_vectors(bound);
    for (std::size_t i = 0; i < vecs.size(); ++i)
      if (mod1 ? is_integer((*values)[i] * Rat(spec.m)) : in_span((*values)[i], spec))
        out.push_back(vecs[i]);
    return out;
  }
};

inline WindowCensus window_census(const std::vector<Rat>& beta, int bound) {
  if (static_cast<int>(beta.size()) < bound)
    throw std::invalid_argument("window_census: beta shorter than bound");
  WindowCensus c;
  c.bound = bound;
  c.beta_prefix.assign(beta.begin(), beta.begin() + bound);
  c.values = window_values(bound, beta);
  return c;
}

// ---------------------------------------------------------------------------
// Exhaustive agreement checks between budgeted enumerations and the census.
// Each check covers *every* pair (or vector) of the window implicitly, via
// the per-vector value signatures across layers, in O(N * layers).
// ---------------------------------------------------------------------------

/// enumerate_neq agrees with the census iff (a) every pair unequal in some
/// layer is unequal under the final beta — i.e. vectors equal under the
/// census agree in every layer where both are in window — and (b) every
/// census-unequal pair is emitted, which the final layer guarantees.
inline bool neq_matches_census(const NeqEnumeration& en, const WindowCensus& census) {
  const auto& view = en.view;
  if (view.final_layer().bound < census.bound) return false;
  const auto& vecs = window_vectors(census.bound);
  for (const auto& l : view.layers) {
    std::map<Rat, Rat> census_to_layer;  // census value -> layer value
    for (const auto& v : vecs) {
      auto lv = view.value_at(l, v);
      if (!lv) continue;
      auto [it, fresh] = census_to_layer.emplace(census.value(v), *lv);
      if (!fresh && it->second != *lv) return false;
    }
  }
  // Completeness: final layer values must coincide with the census on the
  // census window (both derive from the final beta; verify, don't assume).
  for (const auto& v : vecs) {
    auto fv = view.value_at(view.final_layer(), v);
    if (!fv || *fv != census.value(v)) return false;
  }
  return true;
}

/// enumerate_eq_mod1 agrees with the census iff vectors sharing a fractional
/// part in any layer share one under the final beta, and the final layer
/// reproduces the census fractional parts.
inline bool eq_mod1_matches_census(const EqMod1Enumeration& en,
                                   const WindowCensus& census) {
  const auto& view = en.view;
  if (view.final_layer().bound < census.bound) return false;
  const auto& vecs = window_vectors(census.bound);
  for (const auto& l : view.layers) {
    std::map<Rat, Rat> layer_to_census;  // layer frac -> census frac
    for (const auto& v : vecs) {
      auto lv = view.value_at(l, v);
      if (!lv) continue;
      auto [it, fresh] =
          layer_to_census.emplace(frac_part(*lv), frac_part(census.value(v)));
      if (!fresh && it->second != frac_part(census.value(v))) return false;
    }
  }
  for (const auto& v : vecs) {
    auto fv = view.value_at(view.final_layer(), v);
    if (!fv || frac_part(*fv) != frac_part(census.value(v))) return false;
  }
  return true;
}

/// enumerate_subgroup_reps agrees with the census iff no vector is emitted
/// whose census value is outside the target (soundness over layers past
/// s_F), and the final layer emits exactly the census members.
inline bool subgroup_reps_match_census(const SubgroupRepsEnumeration& en,
                                       const WindowCensus& census) {
  const auto& view = en.view;
  if (view.final_layer().bound < census.bound) return false;
  const auto& vecs = window_vectors(census.bound);
  for (const auto& v : vecs) {
    bool emitted = en.contains(v);
    bool truth = census.member(v, en.spec, en.mod1);
    if (emitted != truth) return false;
  }
  return true;
}

/// Complement stream: emitted iff census value outside the target.
inline bool subring_complement_matches_census(const SubringComplementEnumeration& en,
                                              const WindowCensus& census) {
  const auto& view = en.view;
  if (view.final_layer().bound < census.bound) return false;
  for (const auto& v : window_vectors(census.bound)) {
    bool emitted = en.contains(v);
    bool truth = !census.member(v, en.spec, false);
    if (emitted != truth) return false;
  }
  return true;
}

}  // namespace randgroup
