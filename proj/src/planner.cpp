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

#include "asd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asd/errors.hpp"

namespace asd {

namespace {

// Matches the grid slack used by sample_grid: timestamps that should agree
// mathematically can drift apart by a few ulps of the time scale.
constexpr double kTimeSlack = 1e-9;
// Change budgets are compared with a much tighter slack so accumulated
// pass-through error stays far below the audit slack above.
constexpr double kAngleSlack = 1e-12;

void check_constraint(const RateConstraint& c) {
  if (!std::isfinite(c.epsilon) || !(c.epsilon > 0.0)) {
    throw std::invalid_argument("rate constraint epsilon must be finite and > 0");
  }
  if (!std::isfinite(c.delta_t) || !(c.delta_t > 0.0)) {
    throw std::invalid_argument("rate constraint delta_t must be finite and > 0");
  }
}

struct ScheduleBuild {
  std::vector<TimedLight> lights;
  std::vector<std::size_t> infeasible;
};

// Solve the light pointwise so each shadow sample lands where requested.
// Samples with no feasible light keep the previous direction and are
// reported. The seed (overhead light) anchors the first sample's azimuth.
ScheduleBuild solve_schedule(const Trajectory& robot, const ShadowTrajectory& shadow) {
  ScheduleBuild out;
  out.lights.reserve(robot.size());
  LightDirection prev(90.0, 0.0);
  for (std::size_t i = 0; i < robot.size(); ++i) {
    const auto& rs = robot.samples()[i];
    const auto& ss = shadow.samples()[i];
    try {
      prev = solve_light(rs.pose, ss.point, prev);
    } catch (const InfeasibleError&) {
      out.infeasible.push_back(i);
    }
    out.lights.push_back({rs.t, prev});
  }
  return out;
}

Trajectory endpoint_chord(const Trajectory& traj) {
  return Trajectory({traj.samples().front(), traj.samples().back()});
}

LightDirection slerp_toward(const LightDirection& from, const LightDirection& to,
                            double angle_deg) {
  const Vec3 v0 = from.shadow_axis();
  const Vec3 v1 = to.shadow_axis();
  const double omega = angular_distance(from, to) * kRadPerDeg;
  const double u = (angle_deg * kRadPerDeg) / omega;
  const double s = std::sin(omega);
  const Vec3 v = (std::sin((1.0 - u) * omega) / s) * v0 + (std::sin(u * omega) / s) * v1;
  const double r = std::hypot(v.x, v.y);
  if (r == 0.0) return LightDirection(90.0, from.azimuth_phi());
  double alpha = std::atan2(v.z, r) * kDegPerRad;
  if (alpha > 90.0) alpha = 90.0;
  return LightDirection(alpha, normalize_azimuth_deg(std::atan2(v.y, v.x) * kDegPerRad));
}

PlanMetrics base_metrics(const Trajectory& robot, const Trajectory& nominal,
                         const Trajectory& desired) {
  PlanMetrics m;
  m.zeta_cm2 = deviation_cost(robot, nominal);
  m.path_length_cm = path_length(robot);
  m.discrepancy_cm = perception_discrepancy(desired, robot);
  return m;
}

}  // namespace

LightSchedule::LightSchedule(std::vector<TimedLight> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw std::invalid_argument("light schedule needs at least two samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].t)) {
      throw std::invalid_argument("light schedule time must be finite");
    }
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw std::invalid_argument("light schedule timestamps must be strictly increasing");
    }
  }
}

std::vector<ConstraintWindow> evaluate_rate_constraint(const LightSchedule& schedule,
                                                       const RateConstraint& constraint) {
  check_constraint(constraint);
  const auto& s = schedule.samples();

  // Prefix sums of consecutive angular steps; window change is then O(1).
  std::vector<double> prefix(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    prefix[i] = prefix[i - 1] + angular_distance(s[i - 1].light, s[i].light);
  }

  std::vector<ConstraintWindow> windows;
  const double t_end = s.back().t;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w0 = s[i].t;
    const double w1 = w0 + constraint.delta_t;
    if (w1 > t_end + kTimeSlack) break;  // no further sample anchors a full window
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1].t <= w1 + kTimeSlack) ++j;
    const double change = prefix[j] - prefix[i];
    windows.push_back({w0, w1, change, change > constraint.epsilon + kTimeSlack});
  }
  if (windows.empty()) {
    // Schedule shorter than the window length: audit it as one window.
    const double change = prefix.back();
    windows.push_back(
        {s.front().t, t_end, change, change > constraint.epsilon + kTimeSlack});
  }
  return windows;
}

PlanResult plan_motion_illusion(const GripperPose& stationary, const Trajectory& desired,
                                const RateConstraint& constraint, double dt) {
  check_constraint(constraint);
  const Trajectory desired_grid = resample(desired, dt);

  std::vector<TimedPose> parked;
  parked.reserve(desired_grid.size());
  for (const auto& s : desired_grid.samples()) parked.push_back({s.t, stationary});
  const Trajectory robot(std::move(parked));

  const ShadowTrajectory shadow = ground_track(desired_grid);
  if (stationary.h == 0.0) {
    for (const auto& s : shadow.samples()) {
      if (s.point.x != stationary.x || s.point.y != stationary.y) {
        throw InfeasibleError(
            "tip rests on the shadow plane; its shadow cannot leave the parked position");
      }
    }
  }

  auto build = solve_schedule(robot, shadow);
  LightSchedule lights(std::move(build.lights));
  auto report = evaluate_rate_constraint(lights, constraint);
  PlanMetrics metrics = base_metrics(robot, robot, desired_grid);
  return PlanResult{robot,
                    desired_grid,
                    shadow,
                    std::move(lights),
                    std::move(report),
                    std::move(build.infeasible),
                    metrics};
}

PlanResult plan_legible_illusion(const Scene& scene, const std::string& intended_goal,
                                 const ObserverModel& observer, const RateConstraint& constraint,
                                 const LegiblePlanParams& params) {
  check_constraint(constraint);
  if (!(params.dt > 0.0) || !(params.dt < scene.duration())) {
    throw std::invalid_argument("plan dt must lie in (0, scene duration)");
  }
  const Goal& goal = scene.goal(intended_goal);

  const Trajectory robot =
      straight_line(scene.start(), goal.position, scene.duration(), params.dt);
  OptimizeResult opt = optimize_legible(scene, intended_goal, observer, params.optimizer);
  const Trajectory desired = resample(opt.trajectory, params.dt);
  const ShadowTrajectory shadow = ground_track(desired);

  auto build = solve_schedule(robot, shadow);
  LightSchedule lights(std::move(build.lights));
  auto report = evaluate_rate_constraint(lights, constraint);

  PlanMetrics metrics = base_metrics(robot, robot, desired);
  metrics.legibility_robot = legibility_score(robot, intended_goal, scene, observer);
  try {
    metrics.legibility_shadow = legibility_score(lift_to_ground(shadow), intended_goal,
                                                 lift_scene_to_ground(scene), observer);
  } catch (const std::invalid_argument&) {
    // Scene cannot be flattened (a goal sits under the start): the shadow
    // score is undefined rather than the plan being unusable.
    metrics.legibility_shadow.reset();
  }
  metrics.optimizer_converged = opt.converged;
  return PlanResult{robot,
                    desired,
                    shadow,
                    std::move(lights),
                    std::move(report),
                    std::move(build.infeasible),
                    metrics};
}

PlanResult plan_collision_foreshadow(const Trajectory& robot, double k,
                                     const RateConstraint& constraint) {
  check_constraint(constraint);
  const Trajectory desired = lookahead(robot, k);
  const ShadowTrajectory shadow = ground_track(desired);

  auto build = solve_schedule(robot, shadow);
  LightSchedule lights(std::move(build.lights));
  auto report = evaluate_rate_constraint(lights, constraint);
  PlanMetrics metrics = base_metrics(robot, endpoint_chord(robot), desired);
  return PlanResult{robot,
                    desired,
                    shadow,
                    std::move(lights),
                    std::move(report),
                    std::move(build.infeasible),
                    metrics};
}

std::pair<LightSchedule, std::vector<RateClampEvent>> enforce_rate_limit(
    const LightSchedule& schedule, const RateConstraint& constraint) {
  check_constraint(constraint);
  const auto& in = schedule.samples();

  std::vector<TimedLight> out;
  out.reserve(in.size());
  out.push_back(in.front());
  std::vector<RateClampEvent> events;

  for (std::size_t i = 1; i < in.size(); ++i) {
    const double step = in[i].t - in[i - 1].t;
    const double budget = constraint.epsilon * (step / constraint.delta_t);
    const double requested = angular_distance(out.back().light, in[i].light);
    if (requested <= budget + kAngleSlack) {
      out.push_back(in[i]);
    } else {
      events.push_back({i, in[i].t, requested, budget});
      out.push_back({in[i].t, slerp_toward(out.back().light, in[i].light, budget)});
    }
  }
  return {LightSchedule(std::move(out)), std::move(events)};
}

ShadowTrajectory smooth_shadow(const ShadowTrajectory& desired, double gain) {
  if (!std::isfinite(gain) || !(gain > 0.0 && gain <= 1.0)) {
    throw std::invalid_argument("smoothing gain must lie in (0, 1]");
  }
  const auto& in = desired.samples();
  std::vector<TimedPoint> out;
  out.reserve(in.size());
  out.push_back(in.front());
  for (std::size_t i = 1; i < in.size(); ++i) {
    const GroundPoint& prev = out.back().point;
    // std::lerp(a, b, 1) == b, so gain == 1 forwards the input bit-exactly.
    out.push_back({in[i].t, {std::lerp(prev.x, in[i].point.x, gain),
                             std::lerp(prev.y, in[i].point.y, gain)}});
  }
  return ShadowTrajectory(std::move(out));
}

double perception_discrepancy(const Trajectory& perceived, const Trajectory& actual) {
  const double t0 = std::max(perceived.start_time(), actual.start_time());
  const double t1 = std::min(perceived.end_time(), actual.end_time());
  if (!(t1 > t0)) {
    throw std::invalid_argument("trajectories share no time span to compare over");
  }

  std::vector<double> ts;
  ts.push_back(t0);
  for (const auto& s : perceived.samples()) {
    if (s.t > t0 && s.t < t1) ts.push_back(s.t);
  }
  for (const auto& s : actual.samples()) {
    if (s.t > t0 && s.t < t1) ts.push_back(s.t);
  }
  ts.push_back(t1);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const auto gap = [&](double t) {
    const GripperPose a = perceived.at(t);
    const GripperPose b = actual.at(t);
    return std::hypot(a.x - b.x, a.y - b.y, a.h - b.h);
  };

  double integral = 0.0;
  double g_prev = gap(ts.front());
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double g = gap(ts[i]);
    integral += 0.5 * (g_prev + g) * (ts[i] - ts[i - 1]);
    g_prev = g;
  }
  return integral / (t1 - t0);
}

}  // namespace asd
