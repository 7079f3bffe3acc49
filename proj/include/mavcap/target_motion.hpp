#ifndef MAVCAP_TARGET_MOTION_HPP_
#define MAVCAP_TARGET_MOTION_HPP_

#include <cmath>
#include <utility>
#include <variant>

#include "mavcap/mav_dynamics.hpp"

namespace mavcap {

struct StaticTarget {
  Vec3d p = Vec3d(0.0, 0.0, 4.0);
};

struct ConstantVelocityTarget {
  Vec3d p0 = Vec3d(0.0, 0.0, 4.0);
  Vec3d v = Vec3d::Zero();
};

/// Horizontal circle at fixed altitude. The defaults realize a 10 m/s speed
/// with 10 m/s^2 centripetal acceleration (radius 10 m, 1 rad/s).
struct CircularTarget {
  Vec3d center = Vec3d::Zero();  // circle center, z ignored
  double radius = 10.0;
  double angular_rate = 1.0;  // rad/s
  double phase = 0.0;         // rad at t = 0
  double altitude = 4.0;      // m
};

using TargetMotion = std::variant<StaticTarget, ConstantVelocityTarget, CircularTarget>;

template <class S>
Vec3<S> target_position(const TargetMotion& motion, S t) {
  using std::cos;
  using std::sin;
  if (const auto* s = std::get_if<StaticTarget>(&motion)) {
    return s->p.template cast<S>();
  }
  if (const auto* c = std::get_if<ConstantVelocityTarget>(&motion)) {
    return c->p0.template cast<S>() + t * c->v.template cast<S>();
  }
  const auto& c = std::get<CircularTarget>(motion);
  const S a = S(c.angular_rate) * t + S(c.phase);
  return Vec3<S>(S(c.center[0]) + S(c.radius) * cos(a), S(c.center[1]) + S(c.radius) * sin(a),
                 S(c.altitude));
}

inline std::pair<Vec3d, Vec3d> target_state(const TargetMotion& motion, double t) {
  if (const auto* s = std::get_if<StaticTarget>(&motion)) {
    return {s->p, Vec3d::Zero()};
  }
  if (const auto* c = std::get_if<ConstantVelocityTarget>(&motion)) {
    return {c->p0 + t * c->v, c->v};
  }
  const auto& c = std::get<CircularTarget>(motion);
  const double a = c.angular_rate * t + c.phase;
  const Vec3d p(c.center[0] + c.radius * std::cos(a), c.center[1] + c.radius * std::sin(a),
                c.altitude);
  const Vec3d v(-c.radius * c.angular_rate * std::sin(a), c.radius * c.angular_rate * std::cos(a),
                0.0);
  return {p, v};
}

}  // namespace mavcap

#endif  // MAVCAP_TARGET_MOTION_HPP_
