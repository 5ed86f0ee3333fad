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

#include "asd/legibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace asd {

namespace {

double dist3(const GripperPose& a, const GripperPose& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.h - b.h);
}

void check_partial(std::span<const TimedPose> partial) {
  if (partial.empty()) throw std::invalid_argument("partial trajectory needs at least one sample");
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (!std::isfinite(partial[i].t)) throw std::invalid_argument("sample time must be finite");
    if (i > 0 && !(partial[i].t > partial[i - 1].t)) {
      throw std::invalid_argument("partial trajectory timestamps must be strictly increasing");
    }
    const GripperPose& p = partial[i].pose;
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.h) || p.h < 0.0) {
      throw std::invalid_argument("partial trajectory has an invalid pose");
    }
  }
}

std::map<std::string, double> normalized_prior(const Scene& scene,
                                               const std::map<std::string, double>& weights) {
  std::map<std::string, double> prior;
  if (weights.empty()) {
    const double p = 1.0 / static_cast<double>(scene.goals().size());
    for (const auto& g : scene.goals()) prior[g.label] = p;
    return prior;
  }
  if (weights.size() != scene.goals().size()) {
    throw std::invalid_argument("prior must assign a weight to every scene goal and nothing else");
  }
  double sum = 0.0;
  for (const auto& g : scene.goals()) {
    const auto it = weights.find(g.label);
    if (it == weights.end()) {
      throw std::invalid_argument("prior is missing goal '" + g.label + "'");
    }
    if (!std::isfinite(it->second) || it->second < 0.0) {
      throw std::invalid_argument("prior weight for '" + g.label + "' must be finite and >= 0");
    }
    sum += it->second;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("prior weights must not all be zero");
  for (const auto& g : scene.goals()) prior[g.label] = weights.at(g.label) / sum;
  return prior;
}

// Boltzmann-rational inference in the log domain. For goal G with prior p_G,
//   score_G = log p_G - beta * (C + V_G(Q) - V_G(S))
// where C is the arc length already traveled, Q the latest pose, S the first
// observed pose and V_G(.) the straight-line distance to G. Normalized with
// the usual max-shifted softmax.
GoalPosterior posterior_impl(std::span<const TimedPose> partial, const Scene& scene, double beta,
                             const std::map<std::string, double>& prior) {
  const GripperPose& s = partial.front().pose;
  const GripperPose& q = partial.back().pose;
  double traveled = 0.0;
  for (std::size_t i = 1; i < partial.size(); ++i) {
    traveled += dist3(partial[i - 1].pose, partial[i].pose);
  }

  std::map<std::string, double> logits;
  double max_logit = -std::numeric_limits<double>::infinity();
  for (const auto& g : scene.goals()) {
    const double detour = traveled + dist3(g.position, q) - dist3(g.position, s);
    const double logit = std::log(prior.at(g.label)) - beta * detour;
    logits[g.label] = logit;
    max_logit = std::max(max_logit, logit);
  }

  GoalPosterior posterior;
  double z = 0.0;
  for (const auto& [label, logit] : logits) {
    const double e = std::exp(logit - max_logit);
    posterior[label] = e;
    z += e;
  }
  for (auto& [label, p] : posterior) p /= z;
  return posterior;
}

}  // namespace

ObserverModel::ObserverModel(double beta, std::map<std::string, double> prior,
                             PrefixWeighting weighting, double commit_threshold_theta)
    : beta_(beta), prior_(std::move(prior)), weighting_(weighting), theta_(commit_threshold_theta) {
  if (!std::isfinite(beta_) || !(beta_ > 0.0)) {
    throw std::invalid_argument("observer beta must be finite and > 0");
  }
  if (!(theta_ > 0.5 && theta_ <= 1.0)) {
    throw std::invalid_argument("commit threshold theta must lie in (0.5, 1]");
  }
  double sum = 0.0;
  for (const auto& [label, w] : prior_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("prior weight for '" + label + "' must be finite and >= 0");
    }
    sum += w;
  }
  if (!prior_.empty() && std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("prior weights must sum to 1");
  }
}

GoalPosterior goal_posterior(std::span<const TimedPose> partial, const Scene& scene,
                             const ObserverModel& observer) {
  check_partial(partial);
  return posterior_impl(partial, scene, observer.beta(),
                        normalized_prior(scene, observer.prior()));
}

GoalPosterior goal_posterior(const Trajectory& partial, const Scene& scene,
                             const ObserverModel& observer) {
  return goal_posterior(std::span<const TimedPose>(partial.samples()), scene, observer);
}

GoalPosterior goal_posterior_with_prior(std::span<const TimedPose> partial, const Scene& scene,
                                        double beta,
                                        const std::map<std::string, double>& prior_weights) {
  check_partial(partial);
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw std::invalid_argument("beta must be finite and > 0");
  }
  return posterior_impl(partial, scene, beta, normalized_prior(scene, prior_weights));
}

double legibility_score(const Trajectory& traj, const std::string& intended_goal,
                        const Scene& scene, const ObserverModel& observer) {
  (void)scene.goal(intended_goal);  // throws on unknown label
  if (dist3(traj.samples().front().pose, scene.start()) > 1e-6) {
    throw std::invalid_argument("trajectory does not start at the scene start pose");
  }
  const auto prior = normalized_prior(scene, observer.prior());
  const auto& samples = traj.samples();
  const double t_end = traj.end_time();

  // Intended-goal posterior after each prefix, then a weighted trapezoidal
  // average over time.
  std::vector<double> p(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::span<const TimedPose> prefix(samples.data(), k + 1);
    p[k] = posterior_impl(prefix, scene, observer.beta(), prior).at(intended_goal);
  }

  const auto weight = [&](double t) {
    return observer.weighting() == PrefixWeighting::kLinearDecreasing ? (t_end - t) : 1.0;
  };

  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double dt = samples[k].t - samples[k - 1].t;
    const double f0 = weight(samples[k - 1].t);
    const double f1 = weight(samples[k].t);
    num += 0.5 * dt * (p[k - 1] * f0 + p[k] * f1);
    den += 0.5 * dt * (f0 + f1);
  }
  return num / den;
}

namespace {

// Constant-speed timing over [0, duration] for a waypoint polyline; empty
// result when a segment degenerates (times would stop increasing).
std::optional<Trajectory> retime_waypoints(const std::vector<GripperPose>& pts, double duration) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = dist3(pts[i - 1], pts[i]);
    if (seg < 1e-9) return std::nullopt;
    cum[i] = cum[i - 1] + seg;
  }
  const double total = cum.back();
  std::vector<TimedPose> samples;
  samples.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    samples.push_back({duration * (cum[i] / total), pts[i]});
  }
  return Trajectory(std::move(samples));
}

struct StraightSegment {
  GripperPose a;
  GripperPose b;

  GripperPose closest(const GripperPose& p) const {
    const double dx = b.x - a.x, dy = b.y - a.y, dh = b.h - a.h;
    const double len2 = dx * dx + dy * dy + dh * dh;
    double u = ((p.x - a.x) * dx + (p.y - a.y) * dy + (p.h - a.h) * dh) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return {std::lerp(a.x, b.x, u), std::lerp(a.y, b.y, u), std::lerp(a.h, b.h, u)};
  }
};

}  // namespace

OptimizeResult optimize_legible(const Scene& scene, const std::string& intended_goal,
                                const ObserverModel& observer, const OptimizerParams& params) {
  const Goal& goal = scene.goal(intended_goal);
  if (params.waypoints < 3) throw std::invalid_argument("optimizer needs at least 3 waypoints");
  if (params.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(params.step > 0.0)) throw std::invalid_argument("optimizer step must be > 0");
  if (!(params.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (!(params.max_deviation >= 0.0)) throw std::invalid_argument("max_deviation must be >= 0");
  if (!(params.length_penalty >= 0.0)) throw std::invalid_argument("length_penalty must be >= 0");

  const std::size_t n = static_cast<std::size_t>(params.waypoints);
  const StraightSegment chord{scene.start(), goal.position};

  std::vector<GripperPose> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    pts[i] = {std::lerp(chord.a.x, chord.b.x, u), std::lerp(chord.a.y, chord.b.y, u),
              std::lerp(chord.a.h, chord.b.h, u)};
  }

  const auto clamp_waypoint = [&](GripperPose p) {
    p.h = std::max(p.h, 0.0);
    const GripperPose c = chord.closest(p);
    const double d = dist3(p, c);
    if (d > params.max_deviation) {
      const double u = params.max_deviation / d;
      p = {std::lerp(c.x, p.x, u), std::lerp(c.y, p.y, u), std::lerp(c.h, p.h, u)};
    }
    return p;
  };

  // Ascent objective: score minus a charge on relative extra path length.
  // The posterior only looks at sample positions, so without the charge the
  // ascent degenerates into zigzags that stretch time inside the saturated
  // region. A step is only accepted when the raw score does not drop, which
  // keeps the reported score history non-decreasing.
  const double chord_len = dist3(chord.a, chord.b);
  struct Scored {
    double score;
    double objective;
  };
  const auto eval = [&](const std::vector<GripperPose>& wp) -> std::optional<Scored> {
    const auto traj = retime_waypoints(wp, scene.duration());
    if (!traj) return std::nullopt;
    const double s = legibility_score(*traj, intended_goal, scene, observer);
    const double stretch = path_length(*traj) / chord_len - 1.0;
    return Scored{s, s - params.length_penalty * stretch};
  };

  Scored cur = *eval(pts);  // straight line never degenerates (start != goal)
  std::vector<double> history{cur.score};
  bool converged = false;

  constexpr double kFdStep = 1e-3;  // cm
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    // Central-difference gradient over the interior waypoints.
    std::vector<GripperPose> grad(n, GripperPose{0.0, 0.0, 0.0});
    double grad_norm2 = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double* comp[3] = {&grad[i].x, &grad[i].y, &grad[i].h};
      for (int c = 0; c < 3; ++c) {
        auto probe = [&](double delta) -> std::optional<Scored> {
          std::vector<GripperPose> wp = pts;
          double* target[3] = {&wp[i].x, &wp[i].y, &wp[i].h};
          *target[c] += delta;
          if (wp[i].h < 0.0) wp[i].h = 0.0;
          return eval(wp);
        };
        const auto hi = probe(kFdStep);
        const auto lo = probe(-kFdStep);
        if (hi && lo) {
          *comp[c] = (hi->objective - lo->objective) / (2.0 * kFdStep);
          grad_norm2 += *comp[c] * *comp[c];
        }
      }
    }
    const double grad_norm = std::sqrt(grad_norm2);
    if (grad_norm < 1e-12) {
      converged = true;
      break;
    }

    // Backtracking line search along the normalized gradient (so `step` is
    // the waypoint displacement in cm), clamping each candidate into the
    // feasible tube around the straight chord.
    double step = params.step;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings, step *= 0.5) {
      const double scale = step / grad_norm;
      std::vector<GripperPose> cand = pts;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        cand[i].x += scale * grad[i].x;
        cand[i].y += scale * grad[i].y;
        cand[i].h += scale * grad[i].h;
        cand[i] = clamp_waypoint(cand[i]);
      }
      const auto cand_score = eval(cand);
      if (cand_score && cand_score->objective > cur.objective &&
          cand_score->score >= cur.score) {
        const double gain = cand_score->objective - cur.objective;
        pts = std::move(cand);
        cur = *cand_score;
        history.push_back(cur.score);
        accepted = true;
        if (gain < params.tolerance) converged = true;
        break;
      }
    }
    if (!accepted) {
      converged = true;  // no ascent direction left at any step size
      break;
    }
    if (converged) break;
  }

  return OptimizeResult{*retime_waypoints(pts, scene.duration()), converged, std::move(history)};
}

}  // namespace asd
