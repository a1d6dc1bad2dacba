#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "randgroup/adversary.hpp"
#include "randgroup/learners.hpp"
#include "randgroup/serialize.hpp"

namespace randgroup {

struct ConfigError : std::invalid_argument {
  std::string field;
  ConfigError(std::string f, const std::string& msg)
      : std::invalid_argument(f + ": " + msg), field(std::move(f)) {}
};

struct ExperimentConfig {
  Variant variant = Variant::core;
  std::optional<std::string> schedule_file;  // one of file / seed
  std::optional<std::uint64_t> seed;
  std::size_t budget = 16;
  std::optional<std::string> learner;  // bc | exk | mod1bc | subring-ex | eqclass
  std::optional<SubgroupSpec> target;
  std::uint64_t text_seed = 0;
  std::size_t text_length = 200;
  std::string out_path;
};

inline void validate_config(const ExperimentConfig& c) {
  if (c.budget < 1) throw ConfigError("budget", "must be >= 1");
  if (!c.schedule_file && !c.seed)
    throw ConfigError("schedule", "need a schedule file or a seed");
  if (c.schedule_file) {
    std::ifstream in(*c.schedule_file);
    if (!in) throw ConfigError("schedule", "file does not exist: " + *c.schedule_file);
  }
  if (c.learner) {
    static const std::set<std::string> known{"bc", "exk", "mod1bc", "subring-ex", "eqclass"};
    if (!known.count(*c.learner)) throw ConfigError("learner", "unknown: " + *c.learner);
    if (!c.target && *c.learner != "eqclass")
      throw ConfigError("target", "required for learner runs");
  }
  if (c.target && c.target->trivial() && c.learner)
    throw ConfigError("target", "must be non-trivial");
  if (c.out_path.empty()) throw ConfigError("out", "output path required");
}

inline json config_to_json(const ExperimentConfig& c) {
  json j;
  j["variant"] = variant_name(c.variant);
  if (c.schedule_file) j["schedule_file"] = *c.schedule_file;
  if (c.seed) j["seed"] = *c.seed;
  j["budget"] = c.budget;
  if (c.learner) j["learner"] = *c.learner;
  if (c.target) j["target"] = spec_to_json(*c.target);
  j["text_seed"] = c.text_seed;
  j["text_length"] = c.text_length;
  return j;
}

inline ApproximationSchedule load_schedule(const ExperimentConfig& c) {
  if (c.schedule_file) return schedule_from_json(load_json_file(*c.schedule_file));
  return seeded_schedule(*c.seed);
}

/// Representations newly covered by the stage's window (its bound grew),
/// capped so trace lines stay bounded; the full count is always recorded.
inline void append_window_added(json& line, const BuilderRunView::Layer& layer,
                                int prev_bound, std::size_t cap = 32) {
  const auto& vecs = window_vectors(layer.bound);
  std::size_t prev_count = prev_bound < 0 ? 0 : window_vectors(prev_bound).size();
  json added = json::array();
  std::size_t count = 0;
  for (std::size_t i = prev_count; i < vecs.size(); ++i, ++count)
    if (added.size() < cap) added.push_back(repr_to_json(vecs[i]));
  line["window_added"] = std::move(added);
  line["window_added_count"] = count;
}

/// Run the configured experiment and write its JSONL trace.  Line 1 is the
/// config; build records follow, then learn records when a learner is set.
/// Deterministic: replaying a config byte-reproduces the file.
inline GenSeqState run_experiment(const ExperimentConfig& c, std::ostream& out) {
  validate_config(c);
  ApproximationSchedule schedule = load_schedule(c);
  out << config_to_json(c).dump() << "\n";

  GenSeqState st = init_builder(c.variant, schedule, std::nullopt);
  int prev_bound = -1;
  auto emit_stage = [&](const GenSeqState& s) {
    const StageArchive& a = s.history.back();
    json line;
    line["stage"] = a.stage;
    line["beta"] = beta_to_json(*a.beta_full);
    json repl = json::array();
    for (const ChangeRecord& r : s.change_log)
      if (r.stage == a.stage)
        repl.push_back(json{{"i", r.index},
                            {"old", rat_to_string(r.old_value)},
                            {"new", rat_to_string(r.new_value)}});
    line["replaced"] = std::move(repl);
    BuilderRunView::Layer layer{a.stage, a.bound, a.values};
    append_window_added(line, layer, prev_bound);
    prev_bound = a.bound;
    out << line.dump() << "\n";
  };
  emit_stage(st);
  for (std::size_t s = 0; s < c.budget; ++s) {
    st = step_builder(std::move(st));
    emit_stage(st);
  }

  if (c.learner) {
    if (*c.learner == "eqclass") {
      // Pair data from the equality census of the finished builder.
      EqClassState est;
      const auto& beta = *st.history.back().beta_full;
      WindowCensus census = window_census(beta, st.history.back().bound);
      const auto& vecs = window_vectors(census.bound);
      std::size_t n = 0;
      std::uint64_t prev_handle = ~0ull;
      for (std::size_t i = 0; i < vecs.size() && n < c.text_length; ++i)
        for (std::size_t j = i + 1; j < vecs.size() && n < c.text_length; ++j) {
          if (!census.equal(vecs[i], vecs[j])) continue;
          Hypothesis h = equality_class_learner_step(
              est, std::make_pair(vecs[i], vecs[j]));
          json line;
          line["n"] = n;
          line["datum"] = json{repr_to_json(vecs[i]), repr_to_json(vecs[j])};
          line["hypothesis"] = json{{"pivot", h.pivot}};
          line["mind_change"] = h.handle_id != prev_handle;
          prev_handle = h.handle_id;
          out << line.dump() << "\n";
          ++n;
        }
    } else {
      bool mod1 = *c.learner == "mod1bc";
      Text text = canonical_text(*c.target, st, c.text_seed, c.text_length, mod1);
      LearnerFactory factory =
          *c.learner == "bc"         ? make_bc_factory(st)
          : *c.learner == "exk"      ? make_exk_factory(st)
          : *c.learner == "mod1bc"   ? make_mod1bc_factory(st)
                                     : make_subring_ex_factory(st);
      StepFn step = factory();
      std::uint64_t prev_handle = ~0ull;
      for (std::size_t n = 0; n < text.items.size(); ++n) {
        const TextItem& it = text.items[n];
        Hypothesis h = step(it);
        json line;
        line["n"] = n;
        line["datum"] = it.pause ? json(nullptr) : repr_to_json(it.datum);
        if (h.kind == Hypothesis::Kind::ResidueSet) {
          json rs = json::array();
          for (const Rat& r : h.residues) rs.push_back(rat_to_string(r));
          line["hypothesis"] = json{{"residues", rs}};
        } else {
          line["hypothesis"] = spec_to_json(h.spec);
        }
        line["mind_change"] = h.handle_id != prev_handle;
        prev_handle = h.handle_id;
        out << line.dump() << "\n";
      }
    }
  }
  return st;
}

inline GenSeqState run_experiment_to_file(const ExperimentConfig& c) {
  validate_config(c);
  std::ofstream out(c.out_path, std::ios::binary);
  if (!out) throw ConfigError("out", "cannot open for writing: " + c.out_path);
  return run_experiment(c, out);
}

/// Re-run the config found on line 1 of a trace and compare byte-for-byte.
inline bool replay_matches(const std::string& trace_path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) throw ConfigError("trace", "cannot open: " + trace_path);
  std::stringstream original;
  original << in.rdbuf();
  std::string first_line;
  {
    std::istringstream tmp(original.str());
    std::getline(tmp, first_line);
  }
  json cj = json::parse(first_line);
  ExperimentConfig c;
  auto v = variant_from_name(cj.at("variant").get<std::string>());
  if (!v) throw ConfigError("variant", "unknown in trace");
  c.variant = *v;
  if (cj.contains("schedule_file")) c.schedule_file = cj["schedule_file"].get<std::string>();
  if (cj.contains("seed")) c.seed = cj["seed"].get<std::uint64_t>();
  c.budget = cj.at("budget").get<std::size_t>();
  if (cj.contains("learner")) c.learner = cj["learner"].get<std::string>();
  if (cj.contains("target"))
    c.target = make_spec(Int(cj["target"]["q"].get<std::string>()),
                         Int(cj["target"]["m"].get<std::string>()));
  c.text_seed = cj.at("text_seed").get<std::uint64_t>();
  c.text_length = cj.at("text_length").get<std::size_t>();
  c.out_path = trace_path;

  std::ostringstream rerun;
  run_experiment(c, rerun);
  return rerun.str() == original.str();
}

}  // namespace randgroup
