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

#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "asd/legibility.hpp"
#include "asd/trajectory.hpp"
#include "oracles.hpp"

using namespace asd;

namespace {

Scene two_cups() {
  return Scene({0.0, 40.0, 20.0},
               {Goal{"red", {-11.5, 0.0, 10.0}}, Goal{"green", {11.5, 0.0, 10.0}}}, 72.0, 10.0);
}

Scene single_cup() {
  return Scene({0.0, 40.0, 20.0}, {Goal{"cup", {11.5, 0.0, 10.0}}}, 72.0, 10.0);
}

// Signed 2D side of p relative to the chord start->goal (positive = left).
double chord_side(const GripperPose& start, const GripperPose& goal, const GripperPose& p) {
  return (goal.x - start.x) * (p.y - start.y) - (goal.y - start.y) * (p.x - start.x);
}

// Chord with a lateral sine bump towards +x, uniform timing.
Trajectory bump_arc(const Scene& scene, const GripperPose& goal, double amplitude, int n) {
  std::vector<TimedPose> samples;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    GripperPose p{std::lerp(scene.start().x, goal.x, u), std::lerp(scene.start().y, goal.y, u),
                  std::lerp(scene.start().h, goal.h, u)};
    p.x += amplitude * std::sin(oracle::kPi * u);
    samples.push_back({scene.duration() * u, p});
  }
  return Trajectory(std::move(samples));
}

}  // namespace

TEST_SUITE("legibility") {

TEST_CASE("observer model validation") {
  CHECK_THROWS_AS(ObserverModel(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(1.0, {{"a", 0.5}, {"b", 0.6}}), std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(1.0, {{"a", -0.2}, {"b", 1.2}}), std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(1.0, {}, PrefixWeighting::kLinearDecreasing, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(ObserverModel(1.0, {}, PrefixWeighting::kLinearDecreasing, 1.1),
                  std::invalid_argument);
  const ObserverModel ok(2.0, {{"a", 0.25}, {"b", 0.75}}, PrefixWeighting::kConstant, 1.0);
  CHECK(ok.beta() == 2.0);
  CHECK(ok.commit_threshold() == 1.0);
}

TEST_CASE("single-goal posterior is exactly one") {
  const Scene scene = single_cup();
  const ObserverModel obs(1.0);
  const auto traj = straight_line(scene.start(), scene.goal("cup").position, 10.0, 0.5);
  const auto p = goal_posterior(traj, scene, obs);
  CHECK(p.size() == 1);
  CHECK(p.at("cup") == 1.0);
}

TEST_CASE("symmetric goals at the start point split the posterior evenly") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const std::vector<TimedPose> prefix{{0.0, scene.start()}};
  const auto p = goal_posterior(std::span<const TimedPose>(prefix), scene, obs);
  CHECK(p.at("red") == 0.5);
  CHECK(p.at("green") == 0.5);
}

TEST_CASE("half path towards one cup matches the brute-force posterior") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const auto traj = straight_line(scene.start(), scene.goal("green").position, 10.0, 0.1);
  std::vector<TimedPose> prefix;
  for (const auto& s : traj.samples()) {
    if (s.t <= 5.0 + 1e-12) prefix.push_back(s);
  }
  const auto p = goal_posterior(std::span<const TimedPose>(prefix), scene, obs);
  const auto ref = oracle::posterior(prefix, scene, 1.0, {});
  CHECK(std::abs(p.at("red") - ref.at("red")) <= 1e-12);
  CHECK(std::abs(p.at("green") - ref.at("green")) <= 1e-12);
  CHECK(p.at("green") == doctest::Approx(0.9958402337852119).epsilon(1e-9));
  CHECK(p.at("red") + p.at("green") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("posterior is invariant under uniform prior scaling") {
  const Scene scene = two_cups();
  const auto traj = straight_line(scene.start(), scene.goal("green").position, 10.0, 0.5);
  const std::span<const TimedPose> span(traj.samples());
  const auto a = goal_posterior_with_prior(span, scene, 1.0, {{"red", 0.25}, {"green", 0.75}});
  const auto b = goal_posterior_with_prior(span, scene, 1.0, {{"red", 1.0}, {"green", 3.0}});
  CHECK(std::abs(a.at("red") - b.at("red")) <= 1e-15);
  CHECK(std::abs(a.at("green") - b.at("green")) <= 1e-15);
}

TEST_CASE("posterior is equivariant under goal relabeling") {
  const Scene scene = two_cups();
  const Scene swapped({0.0, 40.0, 20.0},
                      {Goal{"green", {-11.5, 0.0, 10.0}}, Goal{"red", {11.5, 0.0, 10.0}}}, 72.0,
                      10.0);
  const ObserverModel obs(1.0);
  // Same physical path in both scenes: heads towards (11.5, 0, 10).
  const auto traj = straight_line(scene.start(), {11.5, 0.0, 10.0}, 10.0, 0.5);
  const auto p = goal_posterior(traj, scene, obs);
  const auto q = goal_posterior(traj, swapped, obs);
  CHECK(std::abs(p.at("green") - q.at("red")) <= 1e-12);
  CHECK(std::abs(p.at("red") - q.at("green")) <= 1e-12);
}

TEST_CASE("near-zero temperature returns the prior") {
  const Scene scene = two_cups();
  const ObserverModel obs(1e-6, {{"red", 0.3}, {"green", 0.7}});
  const auto traj = straight_line(scene.start(), scene.goal("green").position, 10.0, 0.1);
  const auto p = goal_posterior(traj, scene, obs);
  CHECK(std::abs(p.at("red") - 0.3) < 1e-3);
  CHECK(std::abs(p.at("green") - 0.7) < 1e-3);
}

TEST_CASE("posterior validation") {
  const Scene scene = two_cups();
  const auto traj = straight_line(scene.start(), scene.goal("green").position, 10.0, 0.5);
  const std::span<const TimedPose> span(traj.samples());
  CHECK_THROWS_AS(goal_posterior_with_prior(span, scene, 0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(goal_posterior_with_prior(span, scene, 1.0, {{"red", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(goal_posterior_with_prior(span, scene, 1.0,
                                            {{"red", 1.0}, {"blue", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(goal_posterior(std::span<const TimedPose>(), scene, ObserverModel(1.0)),
                  std::invalid_argument);
}

TEST_CASE("single-goal legibility score is exactly one") {
  const Scene scene = single_cup();
  const auto traj = straight_line(scene.start(), scene.goal("cup").position, 10.0, 0.1);
  CHECK(legibility_score(traj, "cup", scene, ObserverModel(1.0)) == 1.0);
}

TEST_CASE("a path along the perpendicular bisector scores one half") {
  const Scene scene = two_cups();
  const auto traj = straight_line(scene.start(), {0.0, 5.0, 12.0}, 10.0, 0.1);
  const double s = legibility_score(traj, "green", scene, ObserverModel(1.0));
  CHECK(s == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("exaggerated arc beats the straight line and both match the oracle") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const GripperPose goal = scene.goal("green").position;
  const auto straight = straight_line(scene.start(), goal, 10.0, 0.1);
  const auto arc = bump_arc(scene, goal, 10.0, 101);

  const double s_straight = legibility_score(straight, "green", scene, obs);
  const double s_arc = legibility_score(arc, "green", scene, obs);
  CHECK(s_arc > s_straight);

  CHECK(std::abs(s_straight - oracle::legibility(straight, "green", scene, 1.0, {}, true)) <=
        1e-9);
  CHECK(std::abs(s_arc - oracle::legibility(arc, "green", scene, 1.0, {}, true)) <= 1e-9);
  CHECK(s_straight >= 0.0);
  CHECK(s_arc <= 1.0);
}

TEST_CASE("score is unchanged by positive rescaling of the time weighting") {
  const Scene scene = two_cups();
  const auto traj = bump_arc(scene, scene.goal("green").position, 8.0, 41);
  const double lib = legibility_score(traj, "green", scene, ObserverModel(1.0));
  const double scaled = oracle::legibility(traj, "green", scene, 1.0, {}, true, 37.5);
  const double unscaled = oracle::legibility(traj, "green", scene, 1.0, {}, true, 1.0);
  CHECK(std::abs(scaled - unscaled) <= 1e-12);
  CHECK(std::abs(lib - unscaled) <= 1e-9);
}

TEST_CASE("constant weighting is supported and matches the oracle") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0, {}, PrefixWeighting::kConstant);
  const auto traj = bump_arc(scene, scene.goal("green").position, 8.0, 41);
  const double lib = legibility_score(traj, "green", scene, obs);
  CHECK(std::abs(lib - oracle::legibility(traj, "green", scene, 1.0, {}, false)) <= 1e-9);
}

TEST_CASE("halving the grid barely moves the score") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const GripperPose goal = scene.goal("green").position;

  const double coarse =
      legibility_score(straight_line(scene.start(), goal, 10.0, 0.1), "green", scene, obs);
  const double fine =
      legibility_score(straight_line(scene.start(), goal, 10.0, 0.05), "green", scene, obs);
  CHECK(std::abs(coarse - fine) < 1e-3);

  const auto arc = bump_arc(scene, goal, 10.0, 101);
  const double arc_coarse = legibility_score(resample(arc, 0.1), "green", scene, obs);
  const double arc_fine = legibility_score(resample(arc, 0.05), "green", scene, obs);
  CHECK(std::abs(arc_coarse - arc_fine) < 1e-3);
}

TEST_CASE("legibility score validation") {
  const Scene scene = two_cups();
  const auto traj = straight_line(scene.start(), scene.goal("green").position, 10.0, 0.5);
  CHECK_THROWS_AS(legibility_score(traj, "blue", scene, ObserverModel(1.0)),
                  std::invalid_argument);
  const auto elsewhere = straight_line({5.0, 40.0, 20.0}, {11.5, 0.0, 10.0}, 10.0, 0.5);
  CHECK_THROWS_AS(legibility_score(elsewhere, "green", scene, ObserverModel(1.0)),
                  std::invalid_argument);
}

TEST_CASE("optimizer returns the straight line when there is nothing to improve") {
  const Scene scene = single_cup();
  const auto res = optimize_legible(scene, "cup", ObserverModel(1.0), {});
  CHECK(res.converged);
  REQUIRE(res.score_history.size() == 1);
  CHECK(res.score_history.front() == 1.0);
  for (const auto& s : res.trajectory.samples()) {
    CHECK(oracle::point_segment_dist(s.pose, scene.start(), scene.goal("cup").position) <= 1e-12);
  }
}

TEST_CASE("optimizer bows away from the competing cup") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const auto res = optimize_legible(scene, "green", obs, {});
  CHECK(res.converged);

  const GripperPose start = scene.start();
  const GripperPose goal = scene.goal("green").position;
  const GripperPose other = scene.goal("red").position;
  const double other_side = chord_side(start, goal, other);
  const auto& samples = res.trajectory.samples();
  REQUIRE(samples.size() == 9);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double side = chord_side(start, goal, samples[i].pose);
    CHECK(side * other_side < 0.0);  // strictly on the far side from the other cup
    CHECK(oracle::point_segment_dist(samples[i].pose, start, goal) <= 15.0 + 1e-9);
  }

  // Fixed endpoints.
  CHECK(samples.front().pose.x == start.x);
  CHECK(samples.front().pose.y == start.y);
  CHECK(samples.back().pose.x == goal.x);
  CHECK(samples.back().pose.y == goal.y);

  // The optimized path must clearly beat the straight baseline.
  const double straight_score = oracle::legibility(
      straight_line(start, goal, scene.duration(), 0.1), "green", scene, 1.0, {}, true);
  CHECK(res.score_history.back() >= straight_score + 0.01);

  // Accepted iterates never lose score.
  for (std::size_t i = 1; i < res.score_history.size(); ++i) {
    CHECK(res.score_history[i] >= res.score_history[i - 1]);
  }
}

TEST_CASE("optimizer is deterministic") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  const auto a = optimize_legible(scene, "green", obs, {});
  const auto b = optimize_legible(scene, "green", obs, {});
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory.samples()[i].t == b.trajectory.samples()[i].t);
    CHECK(a.trajectory.samples()[i].pose.x == b.trajectory.samples()[i].pose.x);
    CHECK(a.trajectory.samples()[i].pose.y == b.trajectory.samples()[i].pose.y);
    CHECK(a.trajectory.samples()[i].pose.h == b.trajectory.samples()[i].pose.h);
  }
  CHECK(a.score_history == b.score_history);
}

TEST_CASE("two goals sharing a position tie at one half and keep the straight line") {
  const Scene scene({0.0, 40.0, 20.0},
                    {Goal{"a", {11.5, 0.0, 10.0}}, Goal{"b", {11.5, 0.0, 10.0}}}, 72.0, 10.0);
  const auto res = optimize_legible(scene, "a", ObserverModel(1.0), {});
  CHECK(res.converged);
  REQUIRE(res.score_history.size() == 1);
  CHECK(res.score_history.front() == 0.5);
  for (const auto& s : res.trajectory.samples()) {
    CHECK(oracle::point_segment_dist(s.pose, scene.start(), {11.5, 0.0, 10.0}) <= 1e-12);
  }
}

TEST_CASE("zero deviation bound pins the optimizer to the straight chord") {
  const Scene scene = two_cups();
  OptimizerParams params;
  params.max_deviation = 0.0;
  const auto res = optimize_legible(scene, "green", ObserverModel(1.0), params);
  for (const auto& s : res.trajectory.samples()) {
    CHECK(oracle::point_segment_dist(s.pose, scene.start(), scene.goal("green").position) <=
          1e-9);
  }
}

TEST_CASE("optimizer parameter validation") {
  const Scene scene = two_cups();
  const ObserverModel obs(1.0);
  OptimizerParams bad;
  bad.waypoints = 2;
  CHECK_THROWS_AS(optimize_legible(scene, "green", obs, bad), std::invalid_argument);
  bad = {};
  bad.step = 0.0;
  CHECK_THROWS_AS(optimize_legible(scene, "green", obs, bad), std::invalid_argument);
  bad = {};
  bad.max_iterations = 0;
  CHECK_THROWS_AS(optimize_legible(scene, "green", obs, bad), std::invalid_argument);
  CHECK_THROWS_AS(optimize_legible(scene, "blue", obs, {}), std::invalid_argument);
}

}  // TEST_SUITE
