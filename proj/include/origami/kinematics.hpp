#pragma once

// Single-segment piecewise-constant-curvature kinematics of a three-tendon
// continuum manipulator.
//
// Frames: Z is the straight backbone axis. Tendon i sits at angular station
// sigma_i = pi/2 + (i-1)*2pi/3 on a circle of radius d, so tendon 1 lies on
// the +Y axis. Bending toward phi shortens the tendons nearest phi:
//   l_i = L - theta * d * cos(sigma_i - phi).

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

namespace origami {

/// Arc parameters of one segment.
struct ConfigState {
  double theta = 0.0;   ///< bend angle [rad], >= 0
  double phi = 0.0;     ///< bending direction from +X [rad], in (-pi, pi]
  double length = 0.0;  ///< effective arc length L + dL [m], > 0
};

/// Active lengths of the three tendons and their offset from the backbone.
struct TendonLengths {
  std::array<double, 3> l{};  ///< [m]
  double d = 0.0;             ///< [m]
};

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Point3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  double norm() const;
};

using EndEffectorPosition = Point3;

struct BackbonePolyline {
  std::vector<Point3> points;  ///< n + 1 joint positions, first is the origin
  std::size_t n = 0;
};

/// Below this bend angle phi is reported as 0.
inline constexpr double kStraightTheta = 1e-9;

/// Closed-form arc switches to its Taylor series below this angle.
inline constexpr double kSeriesTheta = 1e-4;

/// Default link count for the discretized chain.
inline constexpr std::size_t kDefaultLinks = 10;

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

/// Angular station of tendon `i` (0-based).
constexpr double tendon_station(std::size_t i) {
  return std::numbers::pi / 2.0 + static_cast<double>(i) * 2.0 * std::numbers::pi / 3.0;
}

/// Throws InvalidArgument unless theta >= 0, length > 0 and all fields finite.
void validate(const ConfigState& c);
void validate(const TendonLengths& t);

/// Tip of the n-link rigid chain approximating the arc:
///   (L/n) [cos(phi) S_sin, sin(phi) S_sin, S_cos],
///   S_sin = sum_j sin((2j-1) theta / 2n), S_cos likewise with cos.
EndEffectorPosition forward_kinematics_discrete(const ConfigState& c, std::size_t n);

/// n -> infinity limit: (L/theta)[cos(phi)(1-cos theta), sin(phi)(1-cos theta), sin theta].
EndEffectorPosition forward_kinematics_closed(const ConfigState& c);

/// Tendon lengths to arc parameters (L = mean tendon length, theta from the
/// spread of the lengths, phi via atan2 over all four quadrants).
ConfigState joint_to_config(const TendonLengths& t);

/// Arc parameters to tendon lengths. Throws InvalidArgument when a tendon
/// would collapse to a non-positive length.
TendonLengths config_to_joint(const ConfigState& c, double d);

/// Joint positions of the n-link chain; the last point equals
/// forward_kinematics_discrete(c, n) bit for bit.
BackbonePolyline backbone_points(const ConfigState& c, std::size_t n);

}  // namespace origami
