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

#include <cmath>

namespace asd {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

/// A point on the shadow plane (the table surface). Units: cm.
struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Gripper-tip position. x/y are ground-plane coordinates, h is the height of
/// the tip above the shadow plane. Units: cm.
struct GripperPose {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

/// Direction of the (distant, collimated) light source, stored in degrees.
///
/// Elevation alpha is measured from the shadow plane, so alpha = 90 means the
/// light is directly overhead and a tip casts its shadow straight down.
/// Azimuth phi is the compass direction the shadow is pushed towards,
/// measured from +x counterclockwise.
class LightDirection {
 public:
  LightDirection(double elevation_alpha_deg, double azimuth_phi_deg);

  double elevation_alpha() const { return elevation_alpha_; }
  double azimuth_phi() const { return azimuth_phi_; }

  /// Unit vector pointing from the lit object towards the shadow it casts
  /// (downward component). Overhead light maps to exactly (0, 0, 1) so that
  /// overhead directions compare equal regardless of azimuth.
  Vec3 shadow_axis() const;

 private:
  double elevation_alpha_;  // degrees, in (0, 90]
  double azimuth_phi_;      // degrees, in [0, 360)
};

/// Shadow of a gripper tip under a given light. The horizontal displacement
/// from the tip's ground projection has magnitude h / tan(alpha) and points
/// along azimuth phi. Overhead light (alpha == 90) returns the ground
/// projection exactly.
GroundPoint project_shadow(const GripperPose& pose, const LightDirection& light);

/// Inverse of project_shadow: the unique light direction that places the
/// shadow of `pose` at `desired_shadow`.
///
/// When the desired shadow sits exactly at the tip's ground projection, any
/// azimuth works; we return alpha = 90 and keep the azimuth of `previous` so
/// schedules stay continuous. Throws InfeasibleError when the tip rests on
/// the plane (h == 0) but a displaced shadow is requested.
LightDirection solve_light(const GripperPose& pose, const GroundPoint& desired_shadow,
                           const LightDirection& previous);

/// Angle in degrees between two light directions (great-circle distance on
/// the direction sphere). Symmetric, zero iff the directions coincide, and
/// obeys the triangle inequality.
double angular_distance(const LightDirection& a, const LightDirection& b);

/// Fold an angle in degrees into [0, 360).
double normalize_azimuth_deg(double phi_deg);

}  // namespace asd
