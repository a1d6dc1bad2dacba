#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "randgroup/experiment.hpp"
#include "randgroup/theory.hpp"

using namespace randgroup;

namespace {

std::optional<std::uint64_t> env_seed_override() {
  const char* s = std::getenv("RANDGROUP_SEED");
  if (!s || !*s) return std::nullopt;
  return std::strtoull(s, nullptr, 10);
}

int run_build(const std::string& variant, const std::string& schedule_file,
              std::uint64_t seed, bool have_seed, std::size_t budget,
              const std::string& out) {
  ExperimentConfig c;
  auto v = variant_from_name(variant);
  if (!v) {
    std::cerr << "error: variant: unknown variant '" << variant << "'\n";
    return 2;
  }
  c.variant = *v;
  if (!schedule_file.empty()) c.schedule_file = schedule_file;
  if (auto e = env_seed_override()) {
    c.seed = *e;
    c.schedule_file.reset();
  } else if (have_seed) {
    c.seed = seed;
  }
  c.budget = budget;
  c.out_path = out;
  run_experiment_to_file(c);
  std::cout << "trace written to " << out << "\n";
  return 0;
}

int run_learn(const std::string& learner, const std::string& target,
              std::uint64_t text_seed, std::size_t steps,
              const std::string& schedule_file, std::uint64_t seed, bool have_seed,
              std::size_t budget, const std::string& trace) {
  ExperimentConfig c;
  c.learner = learner;
  c.variant = learner == "bc" || learner == "exk" ? Variant::fgsub
              : learner == "mod1bc"               ? Variant::mod1
              : learner == "subring-ex"           ? Variant::subring
                                                  : Variant::core;
  if (!target.empty()) c.target = spec_from_string(target);
  c.text_seed = text_seed;
  c.text_length = steps;
  if (!schedule_file.empty()) c.schedule_file = schedule_file;
  if (auto e = env_seed_override()) {
    c.seed = *e;
    c.schedule_file.reset();
  } else if (have_seed) {
    c.seed = seed;
  }
  if (!c.schedule_file && !c.seed) c.seed = 1;
  c.budget = budget;
  c.out_path = trace;
  run_experiment_to_file(c);
  std::cout << "trace written to " << trace << "\n";
  return 0;
}

int run_adversary(const std::string& kind, const std::string& learner,
                  std::size_t budget, std::uint64_t seed) {
  if (auto e = env_seed_override()) seed = *e;
  if (kind == "ex") {
    GenSeqState run = run_builder(Variant::fgsub, seeded_schedule(seed), 16);
    LearnerFactory factory;
    if (learner == "bc") {
      factory = make_bc_factory(run);
    } else if (learner == "exk") {
      factory = make_exk_factory(run);
    } else {
      std::cerr << "error: learner: built-ins for ex are 'bc' and 'exk'\n";
      return 2;
    }
    AdversaryReport rep = ex_adversary(factory, run, budget);
    std::cout << (rep.witness ? "witness" : "exhausted") << ": " << rep.detail
              << " (steps " << rep.steps_used << ")\n";
    return rep.witness ? 0 : 3;
  }
  if (kind == "bc") {
    PairLearnerFactory factory;
    if (learner == "all-equal") {
      factory = all_equal_pair_learner();
    } else if (learner == "seen-only") {
      factory = seen_only_pair_learner();
    } else {
      std::cerr << "error: learner: built-ins for bc are 'all-equal' and 'seen-only'\n";
      return 2;
    }
    BcAdversaryReport rep = bc_adversary(factory, budget);
    std::cout << (rep.witness ? "witness" : "exhausted") << ": " << rep.detail
              << " (stages " << rep.stages << ", steps " << rep.steps_used << ")\n";
    return rep.witness ? 0 : 3;
  }
  std::cerr << "error: kind: must be 'ex' or 'bc'\n";
  return 2;
}

int run_invariants(const std::string& profile_path, const std::string& profile2_path) {
  ExtendedProfile a = extended_profile_from_json(load_json_file(profile_path));
  std::cout << "profile 1: P = {";
  bool first = true;
  for (std::size_t i : infinitely_dividing_primes(a)) {
    std::cout << (first ? "" : ", ") << prime(i);
    first = false;
  }
  std::cout << "}\n";
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    auto t = szmielew_invariants(a, p, 1);
    std::cout << "  p=" << p << ": (alpha=" << t.alpha << ", beta=" << t.beta_inv
              << ", gamma=" << t.gamma << ")\n";
  }
  std::cout << "  equivalent to (Z,+): " << (equiv_to_integers(a) ? "yes" : "no") << "\n";
  if (!profile2_path.empty()) {
    ExtendedProfile b = extended_profile_from_json(load_json_file(profile2_path));
    std::cout << "elementarily equivalent: "
              << (elementarily_equivalent(a, b) ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_census(const std::string& schedule_file, std::uint64_t seed, bool have_seed,
               std::size_t budget, const std::string& variant,
               const std::string& target) {
  ExperimentConfig c;
  auto v = variant_from_name(variant);
  if (!v) {
    std::cerr << "error: variant: unknown variant '" << variant << "'\n";
    return 2;
  }
  c.variant = *v;
  if (!schedule_file.empty()) c.schedule_file = schedule_file;
  if (auto e = env_seed_override()) {
    c.seed = *e;
    c.schedule_file.reset();
  } else if (have_seed) {
    c.seed = seed;
  }
  if (!c.schedule_file && !c.seed) c.seed = 1;
  c.budget = budget;
  c.out_path = "-";
  validate_config(c);
  GenSeqState run = run_builder(c.variant, load_schedule(c), c.budget);
  const auto& beta = *run.history.back().beta_full;
  WindowCensus census = window_census(beta, run.history.back().bound);
  const auto& vecs = window_vectors(census.bound);
  std::size_t eq = 0, eqm = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      if (census.equal(vecs[i], vecs[j])) ++eq;
      if (census.equal_mod1(vecs[i], vecs[j])) ++eqm;
    }
  std::cout << "window bound " << census.bound << ", " << vecs.size() << " vectors\n";
  std::cout << "equal pairs: " << eq << ", equal-mod-1 pairs: " << eqm << "\n";
  if (!target.empty()) {
    SubgroupSpec s = spec_from_string(target);
    std::cout << "members of <" << rat_to_string(s.generator())
              << ">: " << census.members(s, false).size() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randgroup: stage-wise builders, learners, and invariants for "
               "algorithmically random subgroups of the rationals"};
  app.require_subcommand(1);

  // build
  std::string b_variant = "core", b_schedule, b_out = "trace.jsonl";
  std::uint64_t b_seed = 0;
  std::size_t b_budget = 16;
  auto* build = app.add_subcommand("build", "run a generating-sequence builder");
  build->add_option("--variant", b_variant, "core|mod1|fgsub|subring|prufer");
  build->add_option("--schedule", b_schedule, "schedule JSON file");
  auto* b_seed_opt = build->add_option("--seed", b_seed, "seeded schedule instead of a file");
  build->add_option("--budget", b_budget, "number of stages");
  build->add_option("--out", b_out, "output trace (JSONL)");

  // learn
  std::string l_learner = "bc", l_target, l_schedule, l_trace = "learn.jsonl";
  std::uint64_t l_text_seed = 0, l_seed = 0;
  std::size_t l_steps = 200, l_budget = 16;
  auto* learn = app.add_subcommand("learn", "run a learner over a canonical text");
  learn->add_option("--learner", l_learner, "bc|exk|mod1bc|subring-ex|eqclass");
  learn->add_option("--target", l_target, "target generator q/m");
  learn->add_option("--text-seed", l_text_seed, "text shuffle seed");
  learn->add_option("--steps", l_steps, "text length");
  learn->add_option("--schedule", l_schedule, "schedule JSON file");
  auto* l_seed_opt = learn->add_option("--seed", l_seed, "seeded schedule");
  learn->add_option("--budget", l_budget, "builder stages");
  learn->add_option("--trace", l_trace, "output trace (JSONL)");

  // adversary
  std::string a_kind = "ex", a_learner = "bc";
  std::size_t a_budget = 10000;
  std::uint64_t a_seed = 1;
  auto* adv = app.add_subcommand("adversary", "run a budgeted adversary harness");
  adv->add_option("--kind", a_kind, "ex|bc");
  adv->add_option("--learner", a_learner, "built-in learner name");
  adv->add_option("--budget", a_budget, "step budget");
  adv->add_option("--seed", a_seed, "schedule seed (ex kind)");

  // invariants
  std::string i_profile, i_profile2;
  auto* inv = app.add_subcommand("invariants", "print Szmielew triples and equivalence");
  inv->add_option("--profile", i_profile, "profile JSON file")->required();
  inv->add_option("--profile2", i_profile2, "second profile for comparison");

  // census
  std::string c_schedule, c_variant = "core", c_target;
  std::uint64_t c_seed = 0;
  std::size_t c_budget = 16;
  auto* cen = app.add_subcommand("census", "exhaustive window relations of a finished run");
  cen->add_option("--schedule", c_schedule, "schedule JSON file");
  auto* c_seed_opt = cen->add_option("--seed", c_seed, "seeded schedule");
  cen->add_option("--budget", c_budget, "builder stages");
  cen->add_option("--variant", c_variant, "builder variant");
  cen->add_option("--target", c_target, "report members of <q/m>");

  // replay
  std::string r_trace;
  auto* rep = app.add_subcommand("replay", "re-run a trace's config and compare bytes");
  rep->add_option("trace", r_trace, "trace JSONL file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed())
      return run_build(b_variant, b_schedule, b_seed, b_seed_opt->count() > 0, b_budget,
                       b_out);
    if (learn->parsed())
      return run_learn(l_learner, l_target, l_text_seed, l_steps, l_schedule, l_seed,
                       l_seed_opt->count() > 0, l_budget, l_trace);
    if (adv->parsed()) return run_adversary(a_kind, a_learner, a_budget, a_seed);
    if (inv->parsed()) return run_invariants(i_profile, i_profile2);
    if (cen->parsed())
      return run_census(c_schedule, c_seed, c_seed_opt->count() > 0, c_budget, c_variant,
                        c_target);
    if (rep->parsed()) {
      bool ok = replay_matches(r_trace);
      std::cout << (ok ? "replay matches" : "replay differs") << "\n";
      return ok ? 0 : 2;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
