#ifndef MAVCAP_MAV_DYNAMICS_HPP_
#define MAVCAP_MAV_DYNAMICS_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "mavcap/dual.hpp"

namespace mavcap {

template <class S>
using Vec3 = Eigen::Matrix<S, 3, 1>;
template <class S>
using Vec4 = Eigen::Matrix<S, 4, 1>;

using Vec3d = Eigen::Vector3d;
using Vec4d = Eigen::Vector4d;
using Mat3d = Eigen::Matrix3d;

/// Rigid-body state of the capture MAV. Quaternion is scalar-first and
/// rotates body coordinates into the world frame; body rates are expressed
/// in the body frame.
template <class S>
struct MavStateT {
  Vec3<S> p = Vec3<S>::Zero();       // position, m
  Vec3<S> v = Vec3<S>::Zero();       // velocity, m/s
  Vec4<S> q = (Vec4<S>() << S(1), S(0), S(0), S(0)).finished();  // unit quaternion [w,x,y,z]
  Vec3<S> w = Vec3<S>::Zero();       // body rates, rad/s
};

using MavState = MavStateT<double>;

struct MavParams {
  double m = 0.5;                                  // kg
  Vec3d J = Vec3d(2.5e-3, 2.5e-3, 4.3e-3);         // principal inertia, kg m^2
  double l_arm = 0.12;                             // m
  double c_tau = 0.01;                             // rotor torque constant, m
  double f_rotor_max = 5.0;                        // per-rotor thrust ceiling, N
  Vec3d g = Vec3d(0.0, 0.0, -9.81);                // m/s^2

  void validate() const {
    if (!(m > 0.0) || !(J.array() > 0.0).all() || !(l_arm > 0.0) || !(c_tau > 0.0) ||
        !(f_rotor_max > 0.0) || !g.allFinite()) {
      throw std::invalid_argument("MavParams: positivity/finiteness violated");
    }
  }

  double hover_thrust() const { return m * g.norm(); }
};

template <class S>
struct ControlInputT {
  S f_sum = S(0);                // collective thrust, N
  Vec3<S> tau = Vec3<S>::Zero();  // body torque, N m
};

using ControlInput = ControlInputT<double>;

template <class S>
struct RotorThrustsT {
  Vec4<S> f = Vec4<S>::Zero();  // per-rotor thrusts, N
};

using RotorThrusts = RotorThrustsT<double>;

// --- quaternion helpers (scalar-first Hamilton convention) ---

template <class S>
Vec4<S> quat_mul(const Vec4<S>& a, const Vec4<S>& b) {
  Vec4<S> r;
  r[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  r[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  r[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  r[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return r;
}

template <class S>
Vec4<S> quat_normalized(const Vec4<S>& q) {
  using std::sqrt;
  S n = sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  return q / n;
}

/// Rotates a body-frame vector into the world frame.
template <class S>
Vec3<S> quat_rotate(const Vec4<S>& q, const Vec3<S>& v) {
  const Vec3<S> u(q[1], q[2], q[3]);
  const Vec3<S> t = S(2) * u.cross(v);
  return v + q[0] * t + u.cross(t);
}

template <class S>
Eigen::Matrix<S, 3, 3> quat_to_rot(const Vec4<S>& q) {
  const S w = q[0], x = q[1], y = q[2], z = q[3];
  Eigen::Matrix<S, 3, 3> r;
  r(0, 0) = S(1) - S(2) * (y * y + z * z);
  r(0, 1) = S(2) * (x * y - w * z);
  r(0, 2) = S(2) * (x * z + w * y);
  r(1, 0) = S(2) * (x * y + w * z);
  r(1, 1) = S(1) - S(2) * (x * x + z * z);
  r(1, 2) = S(2) * (y * z - w * x);
  r(2, 0) = S(2) * (x * z - w * y);
  r(2, 1) = S(2) * (y * z + w * x);
  r(2, 2) = S(1) - S(2) * (x * x + y * y);
  return r;
}

inline bool state_finite(const MavState& x) {
  return x.p.allFinite() && x.v.allFinite() && x.q.allFinite() && x.w.allFinite();
}

// --- rotor mixing ---

/// Collective thrust and body torques produced by four rotor thrusts,
/// X configuration with l/sqrt(2) lever arms and c_tau yaw coupling.
template <class S>
ControlInputT<S> rotor_mix(const RotorThrustsT<S>& f, const MavParams& params) {
  const double a = params.l_arm / std::sqrt(2.0);
  ControlInputT<S> u;
  u.f_sum = f.f[0] + f.f[1] + f.f[2] + f.f[3];
  u.tau[0] = a * (f.f[0] + f.f[1] - f.f[2] - f.f[3]);
  u.tau[1] = a * (-f.f[0] + f.f[1] + f.f[2] - f.f[3]);
  u.tau[2] = params.c_tau * (f.f[0] - f.f[1] + f.f[2] - f.f[3]);
  return u;
}

inline ControlInput rotor_mix_checked(const RotorThrusts& f, const MavParams& params) {
  if (!f.f.allFinite() || (f.f.array() < 0.0).any()) {
    throw std::invalid_argument("rotor_mix: thrusts must be finite and non-negative");
  }
  return rotor_mix(f, params);
}

/// Exact solve of the 4x4 mixing system; thrusts may fall outside actuator
/// bounds.
inline RotorThrusts inverse_mix_unchecked(const ControlInput& u, const MavParams& params) {
  const double a = params.l_arm / std::sqrt(2.0);
  const double tx = u.tau[0] / (4.0 * a);
  const double ty = u.tau[1] / (4.0 * a);
  const double tz = u.tau[2] / (4.0 * params.c_tau);
  const double fq = u.f_sum / 4.0;
  RotorThrusts f;
  f.f[0] = fq + tx - ty + tz;
  f.f[1] = fq + tx + ty - tz;
  f.f[2] = fq - tx + ty + tz;
  f.f[3] = fq - tx - ty - tz;
  return f;
}

/// Rotor thrusts realizing u, or nullopt when any thrust leaves
/// [0, f_rotor_max].
inline std::optional<RotorThrusts> inverse_mix(const ControlInput& u, const MavParams& params) {
  if (!std::isfinite(u.f_sum) || !u.tau.allFinite()) {
    throw std::invalid_argument("inverse_mix: non-finite input");
  }
  RotorThrusts f = inverse_mix_unchecked(u, params);
  const double tol = 1e-9 * std::max(1.0, params.f_rotor_max);
  if ((f.f.array() < -tol).any() || (f.f.array() > params.f_rotor_max + tol).any()) {
    return std::nullopt;
  }
  f.f = f.f.cwiseMax(0.0).cwiseMin(params.f_rotor_max);
  return f;
}

/// Projects a commanded wrench onto the actuator-feasible set by clamping
/// the recovered per-rotor thrusts and re-mixing.
inline ControlInput project_feasible(const ControlInput& u, const MavParams& params) {
  RotorThrusts f = inverse_mix_unchecked(u, params);
  f.f = f.f.cwiseMax(0.0).cwiseMin(params.f_rotor_max);
  return rotor_mix(f, params);
}

// --- continuous dynamics and integration ---

/// Continuous-time state derivative: gravity plus body-z thrust, Hamilton
/// quaternion kinematics, Euler rotation equations with diagonal inertia.
/// The q field of the result holds qdot.
template <class S>
MavStateT<S> mav_derivative(const MavStateT<S>& x, const ControlInputT<S>& u,
                            const MavParams& params) {
  MavStateT<S> d;
  d.p = x.v;
  const Vec3<S> e3_world = quat_rotate(x.q, Vec3<S>(S(0), S(0), S(1)));
  d.v = params.g.template cast<S>() + e3_world * (u.f_sum / S(params.m));
  const Vec4<S> omega_quat((S(0)), x.w[0], x.w[1], x.w[2]);
  d.q = S(0.5) * quat_mul(x.q, omega_quat);
  const Vec3<S> Jw(S(params.J[0]) * x.w[0], S(params.J[1]) * x.w[1], S(params.J[2]) * x.w[2]);
  const Vec3<S> gyro = u.tau - x.w.cross(Jw);
  d.w = Vec3<S>(gyro[0] / S(params.J[0]), gyro[1] / S(params.J[1]), gyro[2] / S(params.J[2]));
  return d;
}

template <class S>
MavStateT<S> mav_axpy(const MavStateT<S>& x, const MavStateT<S>& d, S dt) {
  MavStateT<S> r;
  r.p = x.p + dt * d.p;
  r.v = x.v + dt * d.v;
  r.q = x.q + dt * d.q;
  r.w = x.w + dt * d.w;
  return r;
}

/// One forward-Euler step, quaternion renormalized afterwards. This is the
/// discrete model the planner optimizes against.
template <class S>
MavStateT<S> integrate_step_euler(const MavStateT<S>& x, const ControlInputT<S>& u, S dt,
                                  const MavParams& params) {
  MavStateT<S> r = mav_axpy(x, mav_derivative(x, u, params), dt);
  r.q = quat_normalized(r.q);
  return r;
}

/// One classic RK4 step, quaternion renormalized afterwards. Used for
/// simulation and RL rollouts.
template <class S>
MavStateT<S> integrate_step_rk4(const MavStateT<S>& x, const ControlInputT<S>& u, S dt,
                                const MavParams& params) {
  const MavStateT<S> k1 = mav_derivative(x, u, params);
  const MavStateT<S> k2 = mav_derivative(mav_axpy(x, k1, dt * S(0.5)), u, params);
  const MavStateT<S> k3 = mav_derivative(mav_axpy(x, k2, dt * S(0.5)), u, params);
  const MavStateT<S> k4 = mav_derivative(mav_axpy(x, k3, dt), u, params);
  MavStateT<S> r;
  const S s = dt / S(6);
  r.p = x.p + s * (k1.p + S(2) * k2.p + S(2) * k3.p + k4.p);
  r.v = x.v + s * (k1.v + S(2) * k2.v + S(2) * k3.v + k4.v);
  r.q = x.q + s * (k1.q + S(2) * k2.q + S(2) * k3.q + k4.q);
  r.w = x.w + s * (k1.w + S(2) * k2.w + S(2) * k3.w + k4.w);
  r.q = quat_normalized(r.q);
  return r;
}

enum class Integrator { kEuler, kRk4 };

inline MavState integrate_step(const MavState& x, const ControlInput& u, double dt,
                               const MavParams& params, Integrator method = Integrator::kRk4) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_step: dt must be positive");
  if (!state_finite(x) || !std::isfinite(u.f_sum) || !u.tau.allFinite()) {
    throw std::invalid_argument("integrate_step: non-finite state or input");
  }
  return method == Integrator::kEuler ? integrate_step_euler(x, u, dt, params)
                                      : integrate_step_rk4(x, u, dt, params);
}

}  // namespace mavcap

#endif  // MAVCAP_MAV_DYNAMICS_HPP_
