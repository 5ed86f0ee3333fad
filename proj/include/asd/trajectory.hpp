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

#include <string>
#include <vector>

#include "asd/geometry.hpp"

namespace asd {

struct TimedPose {
  double t = 0.0;  // seconds
  GripperPose pose;
};

struct TimedPoint {
  double t = 0.0;  // seconds
  GroundPoint point;
};

/// Piecewise-linear gripper-tip trajectory. At least two samples, strictly
/// increasing timestamps, finite coordinates, heights >= 0.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TimedPose> samples);

  const std::vector<TimedPose>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

  /// Pose at time t: linear interpolation between the bracketing samples,
  /// clamped to the endpoints outside the time domain. Evaluating exactly at
  /// a sample time returns that sample's pose bit-for-bit.
  GripperPose at(double t) const;

 private:
  std::vector<TimedPose> samples_;
};

/// Piecewise-linear shadow path on the table plane; same sampling rules as
/// Trajectory.
class ShadowTrajectory {
 public:
  explicit ShadowTrajectory(std::vector<TimedPoint> samples);

  const std::vector<TimedPoint>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

  GroundPoint at(double t) const;

 private:
  std::vector<TimedPoint> samples_;
};

struct Goal {
  std::string label;
  GripperPose position;
};

/// Workspace description shared by the planners and the simulated observer:
/// a start pose, one or more labeled goals, the table height, and how long
/// the motion is supposed to take.
class Scene {
 public:
  Scene(GripperPose start, std::vector<Goal> goals, double table_height, double duration);

  const GripperPose& start() const { return start_; }
  const std::vector<Goal>& goals() const { return goals_; }
  double table_height() const { return table_height_; }
  double duration() const { return duration_; }

  bool has_goal(const std::string& label) const;
  const Goal& goal(const std::string& label) const;  // throws on unknown label

 private:
  GripperPose start_;
  std::vector<Goal> goals_;
  double table_height_;
  double duration_;
};

/// Uniform time grid from t0 to t1 with step dt; the final point is t1
/// exactly (the last step may be shorter than dt when dt does not divide the
/// span). Strictly increasing.
std::vector<double> sample_grid(double t0, double t1, double dt);

/// Re-sample onto sample_grid(start, end, dt). Endpoint samples are
/// preserved exactly and the operation is idempotent at a fixed dt.
/// Requires 0 < dt < duration.
Trajectory resample(const Trajectory& traj, double dt);
ShadowTrajectory resample(const ShadowTrajectory& traj, double dt);

/// Constant-speed straight segment from start to goal over [0, duration],
/// sampled at dt. Start and goal must be distinct poses.
Trajectory straight_line(const GripperPose& start, const GripperPose& goal, double duration,
                         double dt);

/// Total 3D arc length (cm) of the sampled polyline.
double path_length(const Trajectory& traj);

/// Sum over samples of `traj` of the squared distance (cm^2) to the nearest
/// point on the polyline of `reference` (timestamps ignored). Zero when every
/// sample lies on the reference polyline; in particular the distance of a
/// trajectory to itself is exactly zero.
double deviation_cost(const Trajectory& traj, const Trajectory& reference);

/// Trajectory whose pose at time t is the input's pose at t + k (clamped to
/// the final pose once t + k runs past the end). Keeps the input's time grid.
/// Requires 0 < k < duration.
Trajectory lookahead(const Trajectory& traj, double k);

/// Per-sample overhead projection of a trajectory onto the table plane.
ShadowTrajectory ground_track(const Trajectory& traj);

/// A shadow path re-interpreted as a gripper trajectory gliding on the table
/// (h == 0), so shadow motion can be fed to anything expecting a Trajectory.
Trajectory lift_to_ground(const ShadowTrajectory& shadow);

/// Scene with the start and every goal replaced by its overhead ground
/// projection (h == 0). Throws if two of those projections collide, since the
/// flattened scene would no longer keep the start distinct from each goal.
Scene lift_scene_to_ground(const Scene& scene);

}  // namespace asd
