#include "origami/kinematics.hpp"

#include <cmath>
#include <string>

#include "origami/errors.hpp"

namespace origami {
namespace {

constexpr double kPi = std::numbers::pi;

void require_links(std::size_t n) {
  if (n == 0) throw InvalidArgument("link count must be >= 1");
}

// Running link sums of the discrete chain; `visit(j, s_sin, s_cos)` is called
// after each link so backbone_points and the tip share one accumulation.
template <class Visit>
void accumulate_links(double theta, std::size_t n, Visit&& visit) {
  const double two_n = 2.0 * static_cast<double>(n);
  double s_sin = 0.0, s_cos = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double angle = static_cast<double>(2 * j - 1) * theta / two_n;
    s_sin += std::sin(angle);
    s_cos += std::cos(angle);
    visit(j, s_sin, s_cos);
  }
}

// Scaling by L * (S / n) keeps the straight chain exactly at (0, 0, L).
Point3 chain_point(const ConfigState& c, std::size_t n, double s_sin, double s_cos) {
  const double nn = static_cast<double>(n);
  const double radial = c.length * (s_sin / nn);
  return {std::cos(c.phi) * radial, std::sin(c.phi) * radial, c.length * (s_cos / nn)};
}

}  // namespace

double Point3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double normalize_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

void validate(const ConfigState& c) {
  if (!std::isfinite(c.theta) || !std::isfinite(c.phi) || !std::isfinite(c.length))
    throw InvalidArgument("config state must be finite");
  if (c.theta < 0.0) throw InvalidArgument("bend angle theta must be >= 0");
  if (c.length <= 0.0) throw InvalidArgument("segment length must be > 0");
}

void validate(const TendonLengths& t) {
  for (double l : t.l)
    if (!std::isfinite(l) || l <= 0.0) throw InvalidArgument("tendon lengths must be > 0");
  if (!std::isfinite(t.d) || t.d <= 0.0) throw InvalidArgument("tendon offset d must be > 0");
}

EndEffectorPosition forward_kinematics_discrete(const ConfigState& c, std::size_t n) {
  require_links(n);
  validate(c);
  double s_sin = 0.0, s_cos = 0.0;
  accumulate_links(c.theta, n, [&](std::size_t, double s, double k) {
    s_sin = s;
    s_cos = k;
  });
  return chain_point(c, n, s_sin, s_cos);
}

EndEffectorPosition forward_kinematics_closed(const ConfigState& c) {
  validate(c);
  const double t = c.theta;
  double one_minus_cos_over_t, sin_over_t;
  if (t < kSeriesTheta) {
    const double t2 = t * t;
    one_minus_cos_over_t = t * (0.5 - t2 / 24.0);
    sin_over_t = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  } else {
    // 1 - cos t = 2 sin^2(t/2) avoids cancellation just above the series switch.
    const double h = std::sin(0.5 * t);
    one_minus_cos_over_t = 2.0 * h * h / t;
    sin_over_t = std::sin(t) / t;
  }
  const double radial = c.length * one_minus_cos_over_t;
  return {std::cos(c.phi) * radial, std::sin(c.phi) * radial, c.length * sin_over_t};
}

ConfigState joint_to_config(const TendonLengths& t) {
  validate(t);
  const auto& [l1, l2, l3] = t.l;
  ConfigState c;
  c.length = (l1 + l2 + l3) / 3.0;
  // l1^2 + l2^2 + l3^2 - l1 l2 - l2 l3 - l1 l3, written without cancellation.
  const double d12 = l1 - l2, d23 = l2 - l3, d31 = l3 - l1;
  const double radicand = 0.5 * (d12 * d12 + d23 * d23 + d31 * d31);
  c.theta = 2.0 * std::sqrt(radicand) / (3.0 * t.d);
  if (c.theta < kStraightTheta) {
    c.phi = 0.0;
  } else {
    const double num = (std::numbers::sqrt3 / 3.0) * (l3 + l2 - 2.0 * l1);
    c.phi = normalize_angle(std::atan2(num, l2 - l3));
  }
  return c;
}

TendonLengths config_to_joint(const ConfigState& c, double d) {
  validate(c);
  if (!std::isfinite(d) || d <= 0.0) throw InvalidArgument("tendon offset d must be > 0");
  TendonLengths t;
  t.d = d;
  const double bend = c.theta * d;
  for (std::size_t i = 0; i < 3; ++i) {
    t.l[i] = c.length - bend * std::cos(tendon_station(i) - c.phi);
    if (!(t.l[i] > 0.0))
      throw InvalidArgument("configuration collapses tendon " + std::to_string(i + 1));
  }
  return t;
}

BackbonePolyline backbone_points(const ConfigState& c, std::size_t n) {
  require_links(n);
  validate(c);
  BackbonePolyline poly;
  poly.n = n;
  poly.points.reserve(n + 1);
  poly.points.push_back({0.0, 0.0, 0.0});
  accumulate_links(c.theta, n, [&](std::size_t, double s_sin, double s_cos) {
    poly.points.push_back(chain_point(c, n, s_sin, s_cos));
  });
  return poly;
}

}  // namespace origami
