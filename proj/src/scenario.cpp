// Copyright 2026 The activeshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asd/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <vector>

namespace asd {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument("missing required key '" + std::string(key) + "' in " + where);
  }
  return *it;
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw std::invalid_argument(what + " must be a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw std::invalid_argument(what + " must be a string");
  return j.get<std::string>();
}

GripperPose as_pose(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(what + " must be an array [x, y, h]");
  }
  return {as_number(j[0], what + "[0]"), as_number(j[1], what + "[1]"),
          as_number(j[2], what + "[2]")};
}

Scene parse_scene(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scene must be an object");
  check_keys(j, "scene", {"start", "goals", "table_height", "duration"});
  const GripperPose start = as_pose(require(j, "scene", "start"), "scene.start");

  const json& goals_json = require(j, "scene", "goals");
  if (!goals_json.is_array() || goals_json.empty()) {
    throw std::invalid_argument("scene.goals must be a non-empty array");
  }
  std::vector<Goal> goals;
  for (const auto& g : goals_json) {
    if (!g.is_object()) throw std::invalid_argument("each goal must be an object");
    check_keys(g, "scene.goals[]", {"label", "position"});
    goals.push_back({as_string(require(g, "goal", "label"), "goal.label"),
                     as_pose(require(g, "goal", "position"), "goal.position")});
  }

  double table_height = 0.0;
  if (j.contains("table_height")) {
    table_height = as_number(j["table_height"], "scene.table_height");
  }
  const double duration = as_number(require(j, "scene", "duration"), "scene.duration");
  return Scene(start, std::move(goals), table_height, duration);
}

ObserverModel parse_observer(const json* j, const Scene& scene) {
  double beta = 1.0;
  std::map<std::string, double> prior;
  PrefixWeighting weighting = PrefixWeighting::kLinearDecreasing;
  double theta = 0.8;
  if (j != nullptr) {
    if (!j->is_object()) throw std::invalid_argument("observer must be an object");
    check_keys(*j, "observer", {"beta", "prior", "weighting", "theta"});
    if (j->contains("beta")) beta = as_number((*j)["beta"], "observer.beta");
    if (j->contains("theta")) theta = as_number((*j)["theta"], "observer.theta");
    if (j->contains("weighting")) {
      const std::string w = as_string((*j)["weighting"], "observer.weighting");
      if (w == "linear") {
        weighting = PrefixWeighting::kLinearDecreasing;
      } else if (w == "constant") {
        weighting = PrefixWeighting::kConstant;
      } else {
        throw std::invalid_argument("observer.weighting must be 'linear' or 'constant', got '" +
                                    w + "'");
      }
    }
    if (j->contains("prior")) {
      const json& p = (*j)["prior"];
      if (!p.is_object()) throw std::invalid_argument("observer.prior must be an object");
      for (const auto& [label, value] : p.items()) {
        if (!scene.has_goal(label)) {
          throw std::invalid_argument("observer.prior names unknown goal '" + label + "'");
        }
        prior[label] = as_number(value, "observer.prior['" + label + "']");
      }
      for (const auto& g : scene.goals()) {
        if (prior.find(g.label) == prior.end()) {
          throw std::invalid_argument("observer.prior is missing goal '" + g.label + "'");
        }
      }
    }
  }
  return ObserverModel(beta, std::move(prior), weighting, theta);
}

RateConstraint parse_constraint(const json* j) {
  RateConstraint c;
  if (j != nullptr) {
    if (!j->is_object()) throw std::invalid_argument("constraint must be an object");
    check_keys(*j, "constraint", {"epsilon", "delta_t"});
    if (j->contains("epsilon")) c.epsilon = as_number((*j)["epsilon"], "constraint.epsilon");
    if (j->contains("delta_t")) c.delta_t = as_number((*j)["delta_t"], "constraint.delta_t");
  }
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("constraint.epsilon must be > 0");
  if (!(c.delta_t > 0.0)) throw std::invalid_argument("constraint.delta_t must be > 0");
  return c;
}

PlannerConfig parse_planner(const json* j, const Scene& scene) {
  PlannerConfig p;
  if (j != nullptr) {
    if (!j->is_object()) throw std::invalid_argument("planner must be an object");
    check_keys(*j, "planner",
               {"dt", "goal", "lookahead_k", "waypoints", "max_iters", "step",
                "deviation_bound"});
    if (j->contains("dt")) p.dt = as_number((*j)["dt"], "planner.dt");
    if (j->contains("goal")) {
      p.goal = as_string((*j)["goal"], "planner.goal");
      if (!scene.has_goal(p.goal)) {
        throw std::invalid_argument("planner.goal names unknown goal '" + p.goal + "'");
      }
    }
    if (j->contains("lookahead_k")) {
      p.lookahead_k = as_number((*j)["lookahead_k"], "planner.lookahead_k");
    }
    if (j->contains("waypoints")) {
      const double w = as_number((*j)["waypoints"], "planner.waypoints");
      if (w < 3 || w != static_cast<int>(w)) {
        throw std::invalid_argument("planner.waypoints must be an integer >= 3");
      }
      p.optimizer.waypoints = static_cast<int>(w);
    }
    if (j->contains("max_iters")) {
      const double m = as_number((*j)["max_iters"], "planner.max_iters");
      if (m < 1 || m != static_cast<int>(m)) {
        throw std::invalid_argument("planner.max_iters must be an integer >= 1");
      }
      p.optimizer.max_iterations = static_cast<int>(m);
    }
    if (j->contains("step")) p.optimizer.step = as_number((*j)["step"], "planner.step");
    if (j->contains("deviation_bound")) {
      p.optimizer.max_deviation = as_number((*j)["deviation_bound"], "planner.deviation_bound");
    }
  }
  if (!(p.dt > 0.0)) throw std::invalid_argument("planner.dt must be > 0");
  if (!(p.dt < scene.duration())) {
    throw std::invalid_argument("planner.dt must be smaller than scene.duration");
  }
  if (!(p.lookahead_k > 0.0)) throw std::invalid_argument("planner.lookahead_k must be > 0");
  if (!(p.optimizer.step > 0.0)) throw std::invalid_argument("planner.step must be > 0");
  if (!(p.optimizer.max_deviation >= 0.0)) {
    throw std::invalid_argument("planner.deviation_bound must be >= 0");
  }
  return p;
}

OutputOptions parse_outputs(const json* j) {
  OutputOptions o;
  if (j != nullptr) {
    if (!j->is_object()) throw std::invalid_argument("outputs must be an object");
    check_keys(*j, "outputs", {"directory", "formats"});
    if (j->contains("directory")) {
      o.directory = as_string((*j)["directory"], "outputs.directory");
      if (o.directory.empty()) throw std::invalid_argument("outputs.directory must be non-empty");
    }
    if (j->contains("formats")) {
      const json& f = (*j)["formats"];
      if (!f.is_array()) throw std::invalid_argument("outputs.formats must be an array");
      o.csv = false;
      o.svg = false;
      for (const auto& item : f) {
        const std::string fmt = as_string(item, "outputs.formats[]");
        if (fmt == "csv") {
          o.csv = true;
        } else if (fmt == "svg") {
          o.svg = true;
        } else {
          throw std::invalid_argument("outputs.formats entries must be 'csv' or 'svg', got '" +
                                      fmt + "'");
        }
      }
    }
  }
  return o;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
  check_keys(j, "scenario", {"scene", "observer", "constraint", "planner", "outputs"});
  Scene scene = parse_scene(require(j, "scenario", "scene"));

  const auto section = [&](const char* key) -> const json* {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
  };

  ObserverModel observer = parse_observer(section("observer"), scene);
  RateConstraint constraint = parse_constraint(section("constraint"));
  PlannerConfig planner = parse_planner(section("planner"), scene);
  OutputOptions outputs = parse_outputs(section("outputs"));
  return Scenario{std::move(scene), std::move(observer), constraint, std::move(planner),
                  std::move(outputs)};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open scenario file: " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario file " + path.string() + " is not valid JSON: " +
                                e.what());
  }
  return parse_scenario(j);
}

}  // namespace asd
