#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "randgroup/bitstream.hpp"
#include "randgroup/genseq.hpp"
#include "randgroup/representation.hpp"
#include "randgroup/theory.hpp"

namespace randgroup {

using json = nlohmann::json;

inline json schedule_to_json(const ApproximationSchedule& s) {
  return json{{"stages", s.stages}};
}
inline ApproximationSchedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("stages") || !j["stages"].is_array())
    throw std::invalid_argument("schedule: expected {\"stages\": [...]}");
  ApproximationSchedule s;
  for (const auto& e : j["stages"]) {
    if (!e.is_string()) throw std::invalid_argument("schedule: stages must be strings");
    BitString b = e.get<std::string>();
    validate_bits(b);
    s.stages.push_back(std::move(b));
  }
  if (s.stages.empty()) throw std::invalid_argument("schedule: stages must be non-empty");
  return s;
}

inline json profile_to_json(const ExponentProfile& p) {
  return json{{"exponents", p.exponents}};
}
inline json profile_to_json(const ExtendedProfile& p) {
  json j{{"exponents", p.finite.exponents}};
  if (!p.infinite.empty()) j["infinite"] = p.infinite;
  return j;
}
inline ExtendedProfile extended_profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("exponents") || !j["exponents"].is_array())
    throw std::invalid_argument("profile: expected {\"exponents\": [...]}");
  ExtendedProfile p;
  p.finite.exponents = j["exponents"].get<std::vector<std::size_t>>();
  if (j.contains("infinite"))
    for (const auto& e : j["infinite"]) p.infinite.insert(e.get<std::size_t>());
  return p;
}

inline json rat_to_json(const Rat& r) { return rat_to_string(r); }
inline Rat rat_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational: expected string \"n/d\"");
  return rat_from_string(j.get<std::string>());
}

inline json repr_to_json(const Representation& r) { return json(r); }
inline Representation repr_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("representation: expected integer array");
  return j.get<Representation>();
}

inline json beta_to_json(const std::vector<Rat>& beta) {
  json a = json::array();
  for (const Rat& b : beta) a.push_back(rat_to_string(b));
  return a;
}

/// Parse "q/m" or "q" into a reduced SubgroupSpec.
inline SubgroupSpec spec_from_string(const std::string& s) {
  Rat r = rat_from_string(s);
  if (r < 0) throw std::invalid_argument("target: must be nonnegative");
  return make_spec(num(r), den(r));
}
inline json spec_to_json(const SubgroupSpec& s) {
  return json{{"q", s.q.convert_to<std::string>()}, {"m", s.m.convert_to<std::string>()}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace randgroup
