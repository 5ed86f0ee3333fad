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
#include <string_view>
#include <vector>

#include "asd/observer_sim.hpp"
#include "asd/planner.hpp"

namespace asd {

/// Shortest decimal form with 12 significant digits ("%.12g"): enough to
/// re-verify the projection identity from re-parsed CSV values well within
/// tolerance, without trailing noise digits.
std::string format_double(double v);

/// plan.csv: t,robot_x,robot_y,robot_h,shadow_x,shadow_y,alpha_deg,phi_deg,violated
/// One row per plan sample; `violated` is true when the sample's time lies in
/// any flagged constraint window. LF line endings.
std::string plan_csv(const PlanResult& plan);

/// posterior.csv: t plus one probability column per goal label, in the given
/// order (normally the scene's declaration order).
std::string posterior_csv(const PredictionCurve& curve,
                          const std::vector<std::string>& goal_order);

/// report.csv: method,zeta_cm2,path_length_cm,commit_time_s,correct.
/// Empty commit_time_s/correct cells when the observer never committed.
std::string report_csv(const ComparisonReport& report);

/// Overhead-view plot of the plan (robot ground track, shadow path, start
/// and goals), 1 cm = 4 px, with the scale recorded in the SVG metadata.
std::string plan_svg(const PlanResult& plan, const Scene& scene);

/// Write via a temp file in the same directory plus an atomic rename, so a
/// concurrently read path never shows a partial file. Creates parent
/// directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct PlanCsvRow {
  double t = 0.0;
  double robot_x = 0.0, robot_y = 0.0, robot_h = 0.0;
  double shadow_x = 0.0, shadow_y = 0.0;
  double alpha_deg = 0.0, phi_deg = 0.0;
  bool violated = false;
};

/// Strict parser for the plan.csv format above (used for round-trip checks
/// and downstream tooling).
std::vector<PlanCsvRow> parse_plan_csv(std::string_view content);

}  // namespace asd
