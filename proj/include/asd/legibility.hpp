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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "asd/trajectory.hpp"

namespace asd {

/// How much weight early vs. late observations carry in the legibility score.
enum class PrefixWeighting {
  kLinearDecreasing,  // f(t) = T - t: reading intent early counts more
  kConstant,          // f(t) = 1: plain time average
};

/// Boltzmann-rational goal inference model: an observer that scores each goal
/// by how efficient the motion seen so far would be if that goal were the
/// target, with rationality (inverse temperature) beta. Also carries the
/// observer's goal prior, the prefix weighting used for legibility scores,
/// and the probability threshold at which the observer commits to a goal.
class ObserverModel {
 public:
  ObserverModel() = default;
  explicit ObserverModel(double beta, std::map<std::string, double> prior = {},
                         PrefixWeighting weighting = PrefixWeighting::kLinearDecreasing,
                         double commit_threshold_theta = 0.8);

  double beta() const { return beta_; }
  /// Empty map means a uniform prior over the scene's goals.
  const std::map<std::string, double>& prior() const { return prior_; }
  PrefixWeighting weighting() const { return weighting_; }
  double commit_threshold() const { return theta_; }

 private:
  double beta_ = 1.0;
  std::map<std::string, double> prior_;
  PrefixWeighting weighting_ = PrefixWeighting::kLinearDecreasing;
  double theta_ = 0.8;
};

/// Posterior probability per goal label. std::map keeps a deterministic
/// (lexicographic) iteration order.
using GoalPosterior = std::map<std::string, double>;

/// P(goal | observed motion so far) for a partial trajectory of at least one
/// timed pose. For each goal the observer compares the cost already paid plus
/// the cheapest completion against the cheapest path it could have taken from
/// the start, then exponentiates with the model's beta (computed in the log
/// domain). A single-sample partial returns the prior.
GoalPosterior goal_posterior(std::span<const TimedPose> partial, const Scene& scene,
                             const ObserverModel& observer);
GoalPosterior goal_posterior(const Trajectory& partial, const Scene& scene,
                             const ObserverModel& observer);

/// Same inference with an explicit prior given as nonnegative weights over
/// exactly the scene's goal labels; the weights are normalized internally, so
/// scaling them all by a positive constant does not change the result.
GoalPosterior goal_posterior_with_prior(std::span<const TimedPose> partial, const Scene& scene,
                                        double beta,
                                        const std::map<std::string, double>& prior_weights);

/// Weighted time average of the intended goal's posterior along the
/// trajectory (trapezoidal in time, weights from observer.weighting()).
/// Lies in [0, 1]; the trajectory must start at the scene's start pose.
double legibility_score(const Trajectory& traj, const std::string& intended_goal,
                        const Scene& scene, const ObserverModel& observer);

struct OptimizerParams {
  int waypoints = 9;             // polyline size incl. both endpoints, >= 3
  int max_iterations = 200;
  double step = 1.0;             // initial waypoint displacement per iteration, cm
  double tolerance = 1e-6;       // stop once an iteration improves less than this
  double max_deviation = 15.0;   // cm: waypoint distance bound from the straight segment
  // Ascent regularizer: relative extra path length is charged against the
  // score. Keeps the maximizer a clean one-sided arc — the posterior depends
  // only on where samples sit, so an unregularized ascent happily zigzags to
  // shift integration time into the saturated region. Steps are only
  // accepted when the raw score itself does not decrease.
  double length_penalty = 0.2;
};

struct OptimizeResult {
  Trajectory trajectory;             // constant-speed timing over the scene duration
  bool converged = false;
  std::vector<double> score_history; // legibility of each accepted iterate, non-decreasing
};

/// Gradient-ascent legibility optimization over the interior waypoints of a
/// start-to-goal polyline. Endpoints stay fixed, waypoints stay within
/// params.max_deviation of the straight segment, and every accepted iterate
/// scores at least as high as the previous one. Deterministic.
OptimizeResult optimize_legible(const Scene& scene, const std::string& intended_goal,
                                const ObserverModel& observer, const OptimizerParams& params);

}  // namespace asd
