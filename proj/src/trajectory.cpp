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

#include "asd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace asd {

namespace {

// Slack for detecting whether another full dt step still fits before the end
// of a time span; absorbs accumulated round-off like 30 * 0.1 != 3.
constexpr double kGridSlack = 1e-9;

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void check_pose(const GripperPose& p, const char* what) {
  check_finite(p.x, what);
  check_finite(p.y, what);
  check_finite(p.h, what);
  if (p.h < 0.0) {
    throw std::invalid_argument(std::string(what) + ": height must be >= 0");
  }
}

template <typename Sample>
void check_samples(const std::vector<Sample>& samples, const char* what) {
  if (samples.size() < 2) {
    throw std::invalid_argument(std::string(what) + " needs at least two samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    check_finite(samples[i].t, "sample time");
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw std::invalid_argument(std::string(what) + ": timestamps must be strictly increasing");
    }
  }
}

double segment_parameter(double t, double t0, double t1) { return (t - t0) / (t1 - t0); }

// Squared distance from p to the segment [a, b] in 3D. Clamped projection;
// u == 0 and u == 1 reproduce the endpoints exactly, so a query point that
// coincides with a polyline vertex reports a distance of exactly zero.
double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    const Vec3 w = p - a;
    return dot(w, w);
  }
  double u = dot(p - a, d) / len2;
  u = std::clamp(u, 0.0, 1.0);
  const Vec3 c{std::lerp(a.x, b.x, u), std::lerp(a.y, b.y, u), std::lerp(a.z, b.z, u)};
  const Vec3 w = p - c;
  return dot(w, w);
}

Vec3 to_vec(const GripperPose& p) { return {p.x, p.y, p.h}; }

}  // namespace

Trajectory::Trajectory(std::vector<TimedPose> samples) : samples_(std::move(samples)) {
  check_samples(samples_, "trajectory");
  for (const auto& s : samples_) check_pose(s.pose, "trajectory sample");
}

GripperPose Trajectory::at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("query time must be finite");
  if (t <= samples_.front().t) return samples_.front().pose;
  if (t >= samples_.back().t) return samples_.back().pose;
  const auto it = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double v, const TimedPose& s) { return v < s.t; });
  const TimedPose& hi = *it;
  const TimedPose& lo = *(it - 1);
  const double u = segment_parameter(t, lo.t, hi.t);
  return {std::lerp(lo.pose.x, hi.pose.x, u), std::lerp(lo.pose.y, hi.pose.y, u),
          std::lerp(lo.pose.h, hi.pose.h, u)};
}

ShadowTrajectory::ShadowTrajectory(std::vector<TimedPoint> samples) : samples_(std::move(samples)) {
  check_samples(samples_, "shadow trajectory");
  for (const auto& s : samples_) {
    check_finite(s.point.x, "shadow sample");
    check_finite(s.point.y, "shadow sample");
  }
}

GroundPoint ShadowTrajectory::at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("query time must be finite");
  if (t <= samples_.front().t) return samples_.front().point;
  if (t >= samples_.back().t) return samples_.back().point;
  const auto it = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double v, const TimedPoint& s) { return v < s.t; });
  const TimedPoint& hi = *it;
  const TimedPoint& lo = *(it - 1);
  const double u = segment_parameter(t, lo.t, hi.t);
  return {std::lerp(lo.point.x, hi.point.x, u), std::lerp(lo.point.y, hi.point.y, u)};
}

Scene::Scene(GripperPose start, std::vector<Goal> goals, double table_height, double duration)
    : start_(start), goals_(std::move(goals)), table_height_(table_height), duration_(duration) {
  check_pose(start_, "scene start");
  check_finite(table_height_, "table height");
  if (table_height_ < 0.0) throw std::invalid_argument("table height must be >= 0");
  check_finite(duration_, "scene duration");
  if (!(duration_ > 0.0)) throw std::invalid_argument("scene duration must be > 0");
  if (goals_.empty()) throw std::invalid_argument("scene needs at least one goal");
  std::set<std::string> labels;
  for (const auto& g : goals_) {
    if (g.label.empty()) throw std::invalid_argument("goal labels must be non-empty");
    if (!labels.insert(g.label).second) {
      throw std::invalid_argument("duplicate goal label '" + g.label + "'");
    }
    check_pose(g.position, ("goal '" + g.label + "'").c_str());
    if (g.position.x == start_.x && g.position.y == start_.y && g.position.h == start_.h) {
      throw std::invalid_argument("goal '" + g.label + "' coincides with the start pose");
    }
  }
}

bool Scene::has_goal(const std::string& label) const {
  return std::any_of(goals_.begin(), goals_.end(),
                     [&](const Goal& g) { return g.label == label; });
}

const Goal& Scene::goal(const std::string& label) const {
  for (const auto& g : goals_) {
    if (g.label == label) return g;
  }
  throw std::invalid_argument("unknown goal label '" + label + "'");
}

std::vector<double> sample_grid(double t0, double t1, double dt) {
  check_finite(t0, "grid start");
  check_finite(t1, "grid end");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("grid step must be > 0");
  if (!(t1 > t0)) throw std::invalid_argument("grid end must exceed grid start");
  std::vector<double> ts;
  for (std::size_t i = 0;; ++i) {
    // Multiply rather than accumulate so grid points carry one rounding each.
    const double t = t0 + static_cast<double>(i) * dt;
    if (t >= t1 - kGridSlack) break;
    ts.push_back(t);
  }
  ts.push_back(t1);
  return ts;
}

Trajectory resample(const Trajectory& traj, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("resample: dt must be > 0");
  if (!(dt < traj.duration())) {
    throw std::invalid_argument("resample: dt must be smaller than the trajectory duration");
  }
  std::vector<TimedPose> out;
  for (double t : sample_grid(traj.start_time(), traj.end_time(), dt)) {
    out.push_back({t, traj.at(t)});
  }
  return Trajectory(std::move(out));
}

ShadowTrajectory resample(const ShadowTrajectory& traj, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("resample: dt must be > 0");
  if (!(dt < traj.duration())) {
    throw std::invalid_argument("resample: dt must be smaller than the trajectory duration");
  }
  std::vector<TimedPoint> out;
  for (double t : sample_grid(traj.start_time(), traj.end_time(), dt)) {
    out.push_back({t, traj.at(t)});
  }
  return ShadowTrajectory(std::move(out));
}

Trajectory straight_line(const GripperPose& start, const GripperPose& goal, double duration,
                         double dt) {
  check_pose(start, "start");
  check_pose(goal, "goal");
  if (start.x == goal.x && start.y == goal.y && start.h == goal.h) {
    throw std::invalid_argument("straight_line: start and goal coincide");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("straight_line: duration must be > 0");
  }
  std::vector<TimedPose> out;
  for (double t : sample_grid(0.0, duration, dt)) {
    const double u = t / duration;
    out.push_back({t, {std::lerp(start.x, goal.x, u), std::lerp(start.y, goal.y, u),
                       std::lerp(start.h, goal.h, u)}});
  }
  return Trajectory(std::move(out));
}

double path_length(const Trajectory& traj) {
  double len = 0.0;
  const auto& s = traj.samples();
  for (std::size_t i = 1; i < s.size(); ++i) {
    len += std::hypot(s[i].pose.x - s[i - 1].pose.x, s[i].pose.y - s[i - 1].pose.y,
                      s[i].pose.h - s[i - 1].pose.h);
  }
  return len;
}

double deviation_cost(const Trajectory& traj, const Trajectory& reference) {
  const auto& ref = reference.samples();
  double total = 0.0;
  for (const auto& s : traj.samples()) {
    const Vec3 p = to_vec(s.pose);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ref.size(); ++i) {
      best = std::min(best, point_segment_dist2(p, to_vec(ref[i - 1].pose), to_vec(ref[i].pose)));
    }
    total += best;
  }
  return total;
}

Trajectory lookahead(const Trajectory& traj, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("lookahead: k must be > 0");
  if (!(k < traj.duration())) {
    throw std::invalid_argument("lookahead: k must be smaller than the trajectory duration");
  }
  std::vector<TimedPose> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) {
    out.push_back({s.t, traj.at(s.t + k)});
  }
  return Trajectory(std::move(out));
}

ShadowTrajectory ground_track(const Trajectory& traj) {
  std::vector<TimedPoint> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) {
    out.push_back({s.t, {s.pose.x, s.pose.y}});
  }
  return ShadowTrajectory(std::move(out));
}

Trajectory lift_to_ground(const ShadowTrajectory& shadow) {
  std::vector<TimedPose> out;
  out.reserve(shadow.size());
  for (const auto& s : shadow.samples()) {
    out.push_back({s.t, {s.point.x, s.point.y, 0.0}});
  }
  return Trajectory(std::move(out));
}

Scene lift_scene_to_ground(const Scene& scene) {
  GripperPose start{scene.start().x, scene.start().y, 0.0};
  std::vector<Goal> goals;
  goals.reserve(scene.goals().size());
  for (const auto& g : scene.goals()) {
    if (g.position.x == start.x && g.position.y == start.y) {
      throw std::invalid_argument("cannot flatten scene: goal '" + g.label +
                                  "' sits directly under the start pose");
    }
    goals.push_back({g.label, {g.position.x, g.position.y, 0.0}});
  }
  return Scene(start, std::move(goals), scene.table_height(), scene.duration());
}

}  // namespace asd
