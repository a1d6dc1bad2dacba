#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "randgroup/census.hpp"
#include "randgroup/experiment.hpp"
#include "randgroup/serialize.hpp"

using namespace randgroup;

TEST_CASE("schedule and profile serialization round-trips") {
  ApproximationSchedule s{{"110", "101"}};
  CHECK(schedule_from_json(schedule_to_json(s)).stages == s.stages);
  CHECK_THROWS_AS(schedule_from_json(json{{"stages", json::array()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(schedule_from_json(json{{"stages", {"10x"}}}), std::invalid_argument);

  ExtendedProfile p;
  p.finite.exponents = {2, 1, 0};
  p.infinite = {3};
  ExtendedProfile q = extended_profile_from_json(profile_to_json(p));
  CHECK(q.finite == p.finite);
  CHECK(q.infinite == p.infinite);
}

TEST_CASE("rational and representation serialization") {
  CHECK(rat_from_json(rat_to_json(Rat(-5, 3))) == Rat(-5, 3));
  CHECK(rat_to_json(Rat(4)) == json("4"));
  CHECK(repr_from_json(repr_to_json({1, 0, -2})) == Representation{1, 0, -2});
  CHECK(spec_from_string("3/6") == make_spec(1, 2));
  CHECK(spec_from_string("5") == make_spec(5, 1));
  CHECK_THROWS_AS(spec_from_string("-1/2"), std::invalid_argument);
}

TEST_CASE("config validation names the offending field") {
  ExperimentConfig c;
  c.seed = 1;
  c.out_path = "/tmp/randgroup_test_trace.jsonl";
  c.budget = 0;
  try {
    validate_config(c);
    FAIL("expected a validation error");
  } catch (const ConfigError& e) {
    CHECK(e.field == "budget");
  }
  c.budget = 4;
  c.seed.reset();
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.schedule_file = "/nonexistent/schedule.json";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.schedule_file.reset();
  c.seed = 1;
  c.learner = "nope";
  CHECK_THROWS_AS(validate_config(c), ConfigError);
  c.learner = "bc";
  CHECK_THROWS_AS(validate_config(c), ConfigError);  // target required
  c.target = make_spec(1, 2);
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("window census ground truth") {
  WindowCensus c2 = window_census({Rat(1), Rat(1, 4)}, 2);
  CHECK_THROWS_AS(c2.equal({1}, {0, 4}), std::invalid_argument);  // entry 4 > w
  WindowCensus c4 = window_census({Rat(1), Rat(1, 4), Rat(0), Rat(0)}, 4);
  CHECK(c4.equal({1}, {0, 4}));  // 1 = 4 * (1/4)
  WindowCensus c0 = window_census({}, 0);
  CHECK(c0.value({}) == 0);  // only the empty representation, valued 0
}

TEST_CASE("window census marks equalities within range") {
  std::vector<Rat> beta{Rat(1), Rat(1, 2)};
  WindowCensus c = window_census(beta, 2);
  CHECK(c.equal({1}, {0, 2}));
  CHECK(c.equal_mod1({1}, {0, 2}));
  CHECK(c.equal_mod1({0, 1}, {1, 1}));
  CHECK_FALSE(c.equal({0, 1}, {1}));
  CHECK(c.member({0, 1}, make_spec(1, 2)));
  CHECK_FALSE(c.member({0, 1}, make_spec(1, 1)));
  CHECK_FALSE(c.member({0, 1}, make_spec(1, 1), true));  // 1/2 is not 0 mod 1
  CHECK(c.member({0, 1}, make_spec(1, 2), true));

  // census(w) restricted to the shared window agrees with census(w+1)
  WindowCensus c3 = window_census({Rat(1), Rat(1, 2), Rat(5)}, 3);
  for (const auto& v : window_vectors(2))
    CHECK(c.value(v) == c3.value(v));
}

TEST_CASE("experiment traces are deterministic and replayable") {
  ExperimentConfig c;
  c.variant = Variant::core;
  c.seed = 11;
  c.budget = 12;
  c.out_path = "/tmp/randgroup_test_trace.jsonl";
  run_experiment_to_file(c);
  CHECK(replay_matches(c.out_path));
  std::ostringstream a, b;
  run_experiment(c, a);
  run_experiment(c, b);
  CHECK(a.str() == b.str());
  std::remove(c.out_path.c_str());
}

TEST_CASE("the scripted worked example appears in the trace") {
  const char* sched_path = "/tmp/randgroup_test_sched.json";
  {
    std::ofstream f(sched_path);
    f << R"({"stages": ["1111010", "1111010", "1111010", "1101010"]})";
  }
  ExperimentConfig c;
  c.variant = Variant::core;
  c.schedule_file = sched_path;
  c.budget = 3;
  c.out_path = "/tmp/randgroup_test_trace2.jsonl";
  run_experiment_to_file(c);
  std::ifstream in(c.out_path);
  std::string line;
  bool saw_replacement = false, saw_quarter = false;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    if (!j.contains("replaced")) continue;
    for (const auto& r : j["replaced"])
      if (r["old"] == "1/16" && r["new"] == "9") saw_replacement = true;
    if (j["beta"].size() == 4 && j["beta"][3] == "1/4") saw_quarter = true;
  }
  CHECK(saw_replacement);
  CHECK(saw_quarter);
  CHECK(replay_matches(c.out_path));
  std::remove(c.out_path.c_str());
  std::remove(sched_path);
}

TEST_CASE("learner traces carry hypotheses and mind changes") {
  ExperimentConfig c;
  c.variant = Variant::fgsub;
  c.seed = 2;
  c.budget = 16;
  c.learner = "exk";
  c.target = make_spec(1, 1);
  c.text_seed = 4;
  c.text_length = 40;
  c.out_path = "/tmp/randgroup_test_trace3.jsonl";
  run_experiment_to_file(c);
  std::ifstream in(c.out_path);
  std::string line;
  std::size_t learn_lines = 0;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    if (!j.contains("n")) continue;
    ++learn_lines;
    REQUIRE(j.contains("hypothesis"));
    REQUIRE(j.contains("mind_change"));
  }
  CHECK(learn_lines == 40);
  CHECK(replay_matches(c.out_path));
  std::remove(c.out_path.c_str());
}
