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

#include "asd/observer_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace asd {

namespace {

// Everything the observer has seen up to time t: all samples strictly before
// t plus the interpolated pose at t itself. Never empty.
std::vector<TimedPose> prefix_of(const Trajectory& traj, double t) {
  std::vector<TimedPose> prefix;
  for (const auto& s : traj.samples()) {
    if (s.t < t) prefix.push_back(s);
  }
  prefix.push_back({t, traj.at(t)});
  return prefix;
}

}  // namespace

PredictionCurve::PredictionCurve(std::vector<PredictionPoint> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("prediction curve must not be empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].t)) {
      throw std::invalid_argument("prediction curve time must be finite");
    }
    if (i > 0 && !(points_[i].t > points_[i - 1].t)) {
      throw std::invalid_argument("prediction curve timestamps must be strictly increasing");
    }
    if (points_[i].posterior.empty()) {
      throw std::invalid_argument("prediction curve posterior must not be empty");
    }
    double sum = 0.0;
    for (const auto& [label, p] : points_[i].posterior) {
      if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument("posterior probabilities must be finite and >= 0");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("posterior probabilities must sum to 1");
    }
  }
}

PredictionCurve prediction_curve(const Trajectory& observed, const Scene& scene,
                                 const ObserverModel& observer, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("prediction curve dt must be > 0");
  }
  std::vector<PredictionPoint> points;
  for (double t : sample_grid(observed.start_time(), observed.end_time(), dt)) {
    const auto prefix = prefix_of(observed, t);
    points.push_back({t, goal_posterior(std::span<const TimedPose>(prefix), scene, observer)});
  }
  return PredictionCurve(std::move(points));
}

PredictionCurve prediction_curve(const ShadowTrajectory& observed, const Scene& scene,
                                 const ObserverModel& observer, double dt) {
  return prediction_curve(lift_to_ground(observed), lift_scene_to_ground(scene), observer, dt);
}

CommitResult time_to_commit(const PredictionCurve& curve, double theta,
                            const std::string& intended_goal) {
  if (!(theta > 0.5 && theta <= 1.0)) {
    throw std::invalid_argument("commit threshold theta must lie in (0.5, 1]");
  }
  for (const auto& point : curve.points()) {
    for (const auto& [label, p] : point.posterior) {
      if (p >= theta) {
        CommitResult r;
        r.committed_goal = label;
        r.commit_time = point.t;
        r.correct = (label == intended_goal);
        return r;
      }
    }
  }
  return CommitResult{};
}

ComparisonReport compare_methods(const Scene& scene, const std::string& intended_goal,
                                 const ObserverModel& observer, const RateConstraint& constraint,
                                 const LegiblePlanParams& params) {
  const Goal& goal = scene.goal(intended_goal);
  const double theta = observer.commit_threshold();

  const Trajectory straight =
      straight_line(scene.start(), goal.position, scene.duration(), params.dt);

  // ASD: execute the straight line, let the shadow play the legible motion.
  const PlanResult asd_plan =
      plan_legible_illusion(scene, intended_goal, observer, constraint, params);
  const PredictionCurve asd_curve = prediction_curve(asd_plan.shadow, scene, observer, params.dt);
  const CommitResult asd_commit = time_to_commit(asd_curve, theta, intended_goal);

  // BIC: the robot itself executes the legibility-optimized trajectory. Its
  // row is measured on the same dt grid as the other two so the deviation
  // sums are comparable sample-for-sample.
  const OptimizeResult optimized =
      optimize_legible(scene, intended_goal, observer, params.optimizer);
  const Trajectory legible = resample(optimized.trajectory, params.dt);
  const PredictionCurve bic_curve = prediction_curve(legible, scene, observer, params.dt);
  const CommitResult bic_commit = time_to_commit(bic_curve, theta, intended_goal);

  // NE: straight line, observer watches the robot directly.
  const PredictionCurve ne_curve = prediction_curve(straight, scene, observer, params.dt);
  const CommitResult ne_commit = time_to_commit(ne_curve, theta, intended_goal);

  const auto row = [&](const char* method, const Trajectory& robot, const CommitResult& commit) {
    MethodReport r;
    r.method = method;
    r.zeta_cm2 = deviation_cost(robot, straight);
    r.path_length_cm = path_length(robot);
    r.commit_time_s = commit.commit_time;
    r.correct = commit.correct;
    return r;
  };

  ComparisonReport report;
  // The ASD row reuses the exact robot trajectory from the plan (identical
  // to `straight`), so its deviation is zero by construction, not by chance.
  report.rows.push_back(row("ASD", asd_plan.robot, asd_commit));
  report.rows.push_back(row("BIC", legible, bic_commit));
  report.rows.push_back(row("NE", straight, ne_commit));
  report.intended_goal = intended_goal;
  report.theta = theta;
  return report;
}

}  // namespace asd
