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

#include <optional>
#include <string>
#include <vector>

#include "asd/legibility.hpp"
#include "asd/planner.hpp"
#include "asd/trajectory.hpp"

namespace asd {

struct PredictionPoint {
  double t = 0.0;
  GoalPosterior posterior;
};

/// Goal posterior over time as an observer watches a motion unfold: the
/// posterior at time t uses exactly the motion seen up to t.
class PredictionCurve {
 public:
  explicit PredictionCurve(std::vector<PredictionPoint> points);

  const std::vector<PredictionPoint>& points() const { return points_; }

 private:
  std::vector<PredictionPoint> points_;
};

/// Posterior after every prefix of `observed`, sampled on a dt grid over the
/// trajectory's time span (the final point always uses the whole trajectory).
PredictionCurve prediction_curve(const Trajectory& observed, const Scene& scene,
                                 const ObserverModel& observer, double dt);

/// Observer watching a shadow instead of the gripper: both the shadow path
/// and the scene are flattened onto the table plane first.
PredictionCurve prediction_curve(const ShadowTrajectory& observed, const Scene& scene,
                                 const ObserverModel& observer, double dt);

/// When (and to which goal) an observer following the curve first commits,
/// i.e. the earliest curve point where some goal's posterior reaches theta.
/// All fields empty when the threshold is never reached. `correct` compares
/// the committed goal against intended_goal. theta must lie in (0.5, 1], so
/// at most one goal can clear it at a time.
struct CommitResult {
  std::optional<std::string> committed_goal;
  std::optional<double> commit_time;
  std::optional<bool> correct;
};

CommitResult time_to_commit(const PredictionCurve& curve, double theta,
                            const std::string& intended_goal);

/// One comparison row. Methods: "ASD" (straight robot, legible shadow),
/// "BIC" (robot itself drives the legible trajectory), "NE" (straight robot,
/// no enhancement). zeta is the squared deviation of the executed robot path
/// from the straight start-to-goal route.
struct MethodReport {
  std::string method;
  double zeta_cm2 = 0.0;
  double path_length_cm = 0.0;
  std::optional<double> commit_time_s;
  std::optional<bool> correct;
};

struct ComparisonReport {
  std::vector<MethodReport> rows;  // always ASD, BIC, NE in that order
  std::string intended_goal;
  double theta = 0.8;
};

/// Run all three methods on the same scene and observer and report, per
/// method, the robot-side cost (zeta, path length) and the observer-side
/// benefit (commit time and whether the committed goal was the intended
/// one). ASD and NE execute the identical straight-line robot motion, so
/// their zeta is exactly zero; BIC pays the legible detour with the robot.
ComparisonReport compare_methods(const Scene& scene, const std::string& intended_goal,
                                 const ObserverModel& observer, const RateConstraint& constraint,
                                 const LegiblePlanParams& params);

}  // namespace asd
