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

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "asd/legibility.hpp"
#include "asd/planner.hpp"
#include "asd/trajectory.hpp"

namespace asd {

struct OutputOptions {
  std::string directory = "out";
  bool csv = true;
  bool svg = false;
};

struct PlannerConfig {
  double dt = 0.1;           // seconds
  std::string goal;          // intended goal label; empty = first goal in the scene
  double lookahead_k = 4.0;  // seconds
  OptimizerParams optimizer{};
};

/// A fully validated scenario file: the scene plus observer, constraint,
/// planner, and output settings (each optional in the file, with the
/// documented defaults: epsilon 15 deg, delta_t 3 s, theta 0.8, beta 1,
/// dt 0.1 s).
struct Scenario {
  Scene scene;
  ObserverModel observer;
  RateConstraint constraint;
  PlannerConfig planner;
  OutputOptions outputs;

  const std::string& intended_goal() const {
    return planner.goal.empty() ? scene.goals().front().label : planner.goal;
  }
};

/// Parse a scenario from JSON. Strict: any unknown key anywhere fails with a
/// diagnostic naming that key, and every value is type- and range-checked.
Scenario parse_scenario(const nlohmann::json& j);

/// Read and parse a scenario file.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace asd
