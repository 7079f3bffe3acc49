#ifndef MAVCAP_LAUNCHER_HPP_
#define MAVCAP_LAUNCHER_HPP_

#include <cmath>
#include <stdexcept>

#include "mavcap/ballistics.hpp"
#include "mavcap/mav_dynamics.hpp"

namespace mavcap {

struct LauncherParams {
  double r_f = 0.02;      // friction-wheel radius, m
  double r_b = 0.0085;    // ball radius, m
  double l_off = 0.025;   // wheel center to launch-tube center, m
  double w_f = 2000.0;    // wheel angular speed, rad/s
  double l_mount = 0.05;  // launch point offset from MAV center of mass, m (body x)

  void validate() const {
    if (!(r_f > 0.0) || !(r_b > 0.0) || !(w_f > 0.0) || !(l_mount > 0.0) || !(l_off >= 0.0)) {
      throw std::invalid_argument("LauncherParams: positivity violated");
    }
    if (!(l_off < r_f + r_b)) {
      throw std::invalid_argument("LauncherParams: wheel cannot contact the ball (l_off >= r_f + r_b)");
    }
  }
};

/// Outcome of the friction-wheel contact: the ball leaves the tube at
/// v_launch along body x with backspin w_b0 about body y.
struct LaunchKinematics {
  double v_launch = 0.0;    // relative launch speed, m/s
  double w_b0 = 0.0;        // initial ball spin, rad/s
  double l_b = 0.0;         // contact roll distance, m
  double dt_contact = 0.0;  // contact duration, s
  double theta = 0.0;       // wheel rolling angle over the contact, rad
};

/// Friction-wheel launch kinematics: chord length of the contact arc, the
/// wheel's rolling angle, contact duration, launch speed, and the residual
/// spin from the surface-speed mismatch.
LaunchKinematics launch_kinematics(const LauncherParams& params);

/// World-frame initial state of a ball released from a MAV flying at x.
/// The tube points along body x; the release point leads the center of mass
/// by l_mount, so the MAV's rotation adds a lever-arm velocity term.
template <class S>
BallStateT<S> ball_initial_state(const MavStateT<S>& x, const LauncherParams& params,
                                 const LaunchKinematics& kin) {
  const Vec3<S> e1(S(1), S(0), S(0));
  const Vec3<S> e1_world = quat_rotate(x.q, e1);
  BallStateT<S> b;
  b.p = x.p + S(params.l_mount) * e1_world;
  const Vec3<S> lever = x.w.cross(Vec3<S>(S(params.l_mount), S(0), S(0)));
  b.v = x.v + S(kin.v_launch) * e1_world + quat_rotate(x.q, lever);
  b.w = S(kin.w_b0);
  b.n = quat_rotate(x.q, Vec3<S>(S(0), S(1), S(0)));
  return b;
}

}  // namespace mavcap

#endif  // MAVCAP_LAUNCHER_HPP_
