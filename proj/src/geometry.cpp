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

#include "asd/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "asd/errors.hpp"

namespace asd {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_finite(const GripperPose& pose) {
  require_finite(pose.x, "pose.x");
  require_finite(pose.y, "pose.y");
  require_finite(pose.h, "pose.h");
  if (pose.h < 0.0) {
    throw std::invalid_argument("pose.h must be >= 0 (tip cannot be below the table)");
  }
}

}  // namespace

double normalize_azimuth_deg(double phi_deg) {
  require_finite(phi_deg, "azimuth");
  double phi = std::fmod(phi_deg, 360.0);
  if (phi < 0.0) phi += 360.0;
  // fmod can land exactly on 360.0 after the correction when phi_deg is a
  // tiny negative number; fold that back to 0.
  if (phi >= 360.0) phi = 0.0;
  return phi;
}

LightDirection::LightDirection(double elevation_alpha_deg, double azimuth_phi_deg)
    : elevation_alpha_(elevation_alpha_deg), azimuth_phi_(azimuth_phi_deg) {
  require_finite(elevation_alpha_, "elevation alpha");
  require_finite(azimuth_phi_, "azimuth phi");
  if (!(elevation_alpha_ > 0.0 && elevation_alpha_ <= 90.0)) {
    throw std::invalid_argument("elevation alpha must lie in (0, 90] degrees, got " +
                                std::to_string(elevation_alpha_));
  }
  if (!(azimuth_phi_ >= 0.0 && azimuth_phi_ < 360.0)) {
    throw std::invalid_argument("azimuth phi must lie in [0, 360) degrees, got " +
                                std::to_string(azimuth_phi_));
  }
}

Vec3 LightDirection::shadow_axis() const {
  if (elevation_alpha_ == 90.0) return {0.0, 0.0, 1.0};
  const double alpha = elevation_alpha_ * kRadPerDeg;
  const double phi = azimuth_phi_ * kRadPerDeg;
  const double c = std::cos(alpha);
  return {c * std::cos(phi), c * std::sin(phi), std::sin(alpha)};
}

GroundPoint project_shadow(const GripperPose& pose, const LightDirection& light) {
  require_finite(pose);
  if (light.elevation_alpha() == 90.0) {
    return {pose.x, pose.y};  // overhead light: shadow sits under the tip
  }
  const double offset = pose.h / std::tan(light.elevation_alpha() * kRadPerDeg);
  const double phi = light.azimuth_phi() * kRadPerDeg;
  return {pose.x + offset * std::cos(phi), pose.y + offset * std::sin(phi)};
}

LightDirection solve_light(const GripperPose& pose, const GroundPoint& desired_shadow,
                           const LightDirection& previous) {
  require_finite(pose);
  require_finite(desired_shadow.x, "shadow.x");
  require_finite(desired_shadow.y, "shadow.y");

  const double vx = desired_shadow.x - pose.x;
  const double vy = desired_shadow.y - pose.y;
  const double r = std::hypot(vx, vy);
  if (r == 0.0) {
    // Shadow directly under the tip: overhead light, azimuth is free, keep
    // the previous one for schedule continuity.
    return LightDirection(90.0, previous.azimuth_phi());
  }
  if (pose.h == 0.0) {
    throw InfeasibleError("tip rests on the shadow plane; no light can displace its shadow");
  }
  double alpha = std::atan2(pose.h, r) * kDegPerRad;
  if (alpha > 90.0) alpha = 90.0;  // conversion round-off guard
  const double phi = normalize_azimuth_deg(std::atan2(vy, vx) * kDegPerRad);
  return LightDirection(alpha, phi);
}

double angular_distance(const LightDirection& a, const LightDirection& b) {
  const Vec3 u = a.shadow_axis();
  const Vec3 v = b.shadow_axis();
  // atan2 of (sin, cos) of the enclosed angle; accurate for both tiny and
  // near-opposite separations, unlike acos of the clamped dot product.
  return std::atan2(norm(cross(u, v)), dot(u, v)) * kDegPerRad;
}

}  // namespace asd
