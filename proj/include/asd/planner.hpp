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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asd/geometry.hpp"
#include "asd/legibility.hpp"
#include "asd/trajectory.hpp"

namespace asd {

/// Apparent-motion comfort limit for the light source: within any time window
/// of length delta_t seconds, the light direction may sweep at most epsilon
/// degrees in total.
struct RateConstraint {
  double epsilon = 15.0;  // degrees
  double delta_t = 3.0;   // seconds
};

struct TimedLight {
  double t = 0.0;
  LightDirection light;
};

/// Time-stamped light directions; at least two samples, strictly increasing
/// timestamps.
class LightSchedule {
 public:
  explicit LightSchedule(std::vector<TimedLight> samples);

  const std::vector<TimedLight>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }

 private:
  std::vector<TimedLight> samples_;
};

/// One sliding window of the rate-constraint check: total angular variation
/// of the schedule inside [window_start, window_end].
struct ConstraintWindow {
  double window_start = 0.0;
  double window_end = 0.0;
  double angular_change_deg = 0.0;
  bool violated = false;
};

/// A sample whose schedule entry had to be clamped by enforce_rate_limit.
struct RateClampEvent {
  std::size_t index = 0;
  double t = 0.0;
  double requested_change_deg = 0.0;
  double allowed_change_deg = 0.0;
};

struct PlanMetrics {
  double zeta_cm2 = 0.0;        // squared deviation of the robot path from its nominal path
  double path_length_cm = 0.0;  // robot path length
  double discrepancy_cm = 0.0;  // time-mean gap between perceived and actual motion
  std::optional<double> legibility_robot;   // what watching the robot conveys
  std::optional<double> legibility_shadow;  // what watching the shadow conveys
  bool optimizer_converged = true;
};

/// Full output of a shadow plan: the robot motion to execute, the trajectory
/// the observer should perceive, its shadow path, the light schedule that
/// realizes it, the rate-constraint audit, and summary metrics.
/// infeasible_samples lists indices where no light could place the shadow
/// (the schedule holds the previous direction there).
struct PlanResult {
  Trajectory robot;
  Trajectory desired;
  ShadowTrajectory shadow;
  LightSchedule lights;
  std::vector<ConstraintWindow> constraint_report;
  std::vector<std::size_t> infeasible_samples;
  PlanMetrics metrics;
};

/// Sliding-window audit of a schedule: one window per schedule sample that
/// can anchor a full delta_t span, covering [t_i, t_i + delta_t]; when the
/// schedule is shorter than delta_t, a single window spans the whole
/// schedule. angular_change_deg is the summed angular distance between
/// consecutive samples inside the window.
std::vector<ConstraintWindow> evaluate_rate_constraint(const LightSchedule& schedule,
                                                       const RateConstraint& constraint);

/// Keep the robot parked at `stationary` while the light schedule walks its
/// shadow along the ground track of `desired` (resampled at dt). Throws
/// InfeasibleError when the tip rests on the plane but the desired shadow
/// moves away from it.
PlanResult plan_motion_illusion(const GripperPose& stationary, const Trajectory& desired,
                                const RateConstraint& constraint, double dt);

struct LegiblePlanParams {
  double dt = 0.1;              // seconds
  OptimizerParams optimizer{};
};

/// Drive the robot straight at the intended goal while the shadow plays the
/// legibility-optimized trajectory for the same scene.
PlanResult plan_legible_illusion(const Scene& scene, const std::string& intended_goal,
                                 const ObserverModel& observer, const RateConstraint& constraint,
                                 const LegiblePlanParams& params);

/// Shift the shadow k seconds into the robot's own future (clamped at the
/// end), so an impending contact shows up in the shadow k seconds early.
/// Uses the robot trajectory's existing sample grid.
PlanResult plan_collision_foreshadow(const Trajectory& robot, double k,
                                     const RateConstraint& constraint);

/// Project a schedule onto the rate constraint: each step may turn at most
/// epsilon * (step_duration / delta_t) degrees, which guarantees every
/// delta_t window stays within epsilon. Steps already inside that budget are
/// passed through unchanged; larger turns are clamped along the great circle
/// towards the requested direction, and each clamp is reported.
std::pair<LightSchedule, std::vector<RateClampEvent>> enforce_rate_limit(
    const LightSchedule& schedule, const RateConstraint& constraint);

/// First-order lag towards the desired shadow: each output sample moves from
/// the previous output a fraction `gain` of the way to the current desired
/// sample. gain in (0, 1]; gain == 1 reproduces the input exactly.
ShadowTrajectory smooth_shadow(const ShadowTrajectory& desired, double gain);

/// Time-averaged 3D distance (cm) between two trajectories over their
/// overlapping time span, integrated trapezoidally on the union of their
/// sample times. Symmetric; zero iff the trajectories agree on that span.
/// Throws when the time domains do not overlap.
double perception_discrepancy(const Trajectory& perceived, const Trajectory& actual);

}  // namespace asd
