#pragma once

#include <string>

#include <json.hpp>

#include "circumfeas/crm.hpp"
#include "circumfeas/scenario.hpp"
#include "circumfeas/sets.hpp"

namespace circumfeas {

using nlohmann::json;

// ---- sets ----------------------------------------------------------------

inline json set_to_json(const ConvexSet& set) {
  json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          j = {{"kind", "halfspace"}, {"data", {{"a", s.a}, {"b", s.b}}}};
        } else if constexpr (std::is_same_v<T, Polyhedron>) {
          json hs = json::array();
          for (const HalfSpace& h : s.halfspaces) hs.push_back({{"a", h.a}, {"b", h.b}});
          j = {{"kind", "polyhedron"}, {"data", {{"halfspaces", hs}}}};
        } else if constexpr (std::is_same_v<T, ConeV>) {
          j = {{"kind", "cone_v"}, {"data", {{"generators", s.generators}}}};
        } else if constexpr (std::is_same_v<T, LinearSubspace>) {
          j = {{"kind", "subspace"}, {"data", {{"basis", s.basis}}}};
        } else {
          static_assert(std::is_same_v<T, Ray>);
          j = {{"kind", "ray"}, {"data", {{"direction", s.direction}}}};
        }
      },
      set);
  return j;
}

inline ConvexSet set_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json& d = j.at("data");
  if (kind == "halfspace")
    return HalfSpace{d.at("a").get<Vec>(), d.at("b").get<double>()};
  if (kind == "polyhedron") {
    Polyhedron p;
    for (const json& h : d.at("halfspaces"))
      p.halfspaces.push_back(HalfSpace{h.at("a").get<Vec>(), h.at("b").get<double>()});
    return p;
  }
  if (kind == "cone_v") return ConeV{d.at("generators").get<std::vector<Vec>>()};
  if (kind == "subspace") return LinearSubspace{d.at("basis").get<std::vector<Vec>>()};
  if (kind == "ray") return Ray{d.at("direction").get<Vec>()};
  throw std::runtime_error("scenario json: unknown set kind '" + kind + "'");
}

// ---- scenarios -----------------------------------------------------------

inline json scenario_to_json(const Scenario& s) {
  json j{{"name", s.name},
         {"dim", set_dim(s.set_a) != 0 ? set_dim(s.set_a) : set_dim(s.set_b)},
         {"set_a", set_to_json(s.set_a)},
         {"set_b", set_to_json(s.set_b)},
         {"initial_points", s.initial_points},
         {"tol", {{"eps_feas", s.tol.eps_feas}, {"eps_degen", s.tol.eps_degen}}},
         {"max_iters", s.max_iters}};
  if (s.expected) {
    json e{{"finite", s.expected->finite}};
    if (s.expected->max_steps) e["max_steps"] = *s.expected->max_steps;
    j["expected"] = std::move(e);
  }
  return j;
}

inline Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = j.at("name").get<std::string>();
  s.set_a = set_from_json(j.at("set_a"));
  s.set_b = set_from_json(j.at("set_b"));
  s.initial_points = j.at("initial_points").get<std::vector<Vec>>();
  if (j.contains("tol")) {
    s.tol.eps_feas = j["tol"].value("eps_feas", s.tol.eps_feas);
    s.tol.eps_degen = j["tol"].value("eps_degen", s.tol.eps_degen);
  }
  s.max_iters = j.value("max_iters", kDefaultMaxIters);
  if (j.contains("expected")) {
    Expectation e;
    e.finite = j["expected"].at("finite").get<bool>();
    if (j["expected"].contains("max_steps"))
      e.max_steps = j["expected"]["max_steps"].get<int>();
    s.expected = e;
  }
  validate_scenario(s);
  return s;
}

// ---- traces --------------------------------------------------------------

inline json step_to_json(const CrmStep& s) {
  return json{{"x", s.x},
              {"y", s.y},
              {"z", s.z},
              {"next", s.next},
              {"cardinality_case", case_name(s.cardinality_case)},
              {"dist_a", s.dist_a},
              {"dist_b", s.dist_b}};
}

inline json trace_to_json(const IterationTrace& t) {
  json steps = json::array();
  for (const CrmStep& s : t.steps) steps.push_back(step_to_json(s));
  json j{{"steps", std::move(steps)},
         {"terminated", terminated_name(t.terminated)},
         {"iterations_used", t.iterations_used},
         {"final_point", t.final_point},
         {"final_dist_a", t.final_dist_a},
         {"final_dist_b", t.final_dist_b}};
  if (!t.error_message.empty()) j["error_message"] = t.error_message;
  return j;
}

}  // namespace circumfeas
