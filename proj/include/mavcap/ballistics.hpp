#ifndef MAVCAP_BALLISTICS_HPP_
#define MAVCAP_BALLISTICS_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "mavcap/mav_dynamics.hpp"

namespace mavcap {

/// Flight state of a launched ball: scalar spin about a fixed unit axis.
template <class S>
struct BallStateT {
  Vec3<S> p = Vec3<S>::Zero();   // position, m
  Vec3<S> v = Vec3<S>::Zero();   // velocity, m/s
  S w = S(0);                    // spin rate, rad/s
  Vec3<S> n = (Vec3<S>() << S(0), S(1), S(0)).finished();  // spin axis, unit
};

using BallState = BallStateT<double>;

struct BallParams {
  double m_b = 0.003;     // kg
  double r_b = 0.0085;    // m
  double J_b = 8.67e-8;   // kg m^2, solid sphere (2/5) m r^2 at the defaults
  double rho = 1.225;     // kg/m^3
  double C_d = 0.47;      // drag coefficient
  double C_l = 2e-4;      // lift coefficient scaling w_b, s
  double C_M = 5e-5;      // spin-decay coefficient, s

  double cross_section() const { return M_PI * r_b * r_b; }
  Vec3d g = Vec3d(0.0, 0.0, -9.81);

  void validate() const {
    if (!(m_b > 0.0) || !(r_b > 0.0) || !(J_b > 0.0) || !(rho > 0.0) || !(C_d >= 0.0) ||
        !(C_l >= 0.0) || !(C_M >= 0.0)) {
      throw std::invalid_argument("BallParams: positivity violated");
    }
  }
};

/// Spinning-ball derivative: gravity, quadratic drag opposing velocity,
/// Magnus lift along (v x n)/||v x n||, and a moment that decays the spin.
/// Near-singular norms produce exactly zero aerodynamic terms.
template <class S>
BallStateT<S> ball_derivative(const BallStateT<S>& x, const BallParams& params) {
  using std::sqrt;
  BallStateT<S> d;
  d.p = x.v;
  d.v = params.g.template cast<S>();
  d.n = Vec3<S>::Zero();
  d.w = S(0);

  const S v2 = x.v.squaredNorm();
  if (value(v2) < 1e-12) return d;  // ||v|| < 1e-6: all aerodynamic terms vanish
  const S vn = sqrt(v2);
  const S dyn = S(0.5 * params.rho * params.cross_section()) * v2;

  // drag
  d.v -= (dyn * S(params.C_d) / (S(params.m_b) * vn)) * x.v;

  // Magnus lift, zero when v is (near) parallel to the spin axis
  const Vec3<S> vxn = x.v.cross(x.n);
  const S vxn2 = vxn.squaredNorm();
  if (value(vxn2) >= 1e-18) {
    const Vec3<S> e_b = vxn / sqrt(vxn2);
    d.v += (dyn * S(params.C_l) / S(params.m_b)) * x.w * e_b;
  }

  // aerodynamic moment, sign chosen so the spin magnitude decays
  d.w = -(dyn * S(params.C_M) * S(2.0 * params.r_b) / S(params.J_b)) * x.w;
  return d;
}

template <class S>
BallStateT<S> ball_axpy(const BallStateT<S>& x, const BallStateT<S>& d, S dt) {
  BallStateT<S> r;
  r.p = x.p + dt * d.p;
  r.v = x.v + dt * d.v;
  r.w = x.w + dt * d.w;
  r.n = x.n;  // spin axis held constant in flight
  return r;
}

template <class S>
BallStateT<S> ball_step_euler(const BallStateT<S>& x, S dt, const BallParams& params) {
  return ball_axpy(x, ball_derivative(x, params), dt);
}

template <class S>
BallStateT<S> ball_step_rk4(const BallStateT<S>& x, S dt, const BallParams& params) {
  const BallStateT<S> k1 = ball_derivative(x, params);
  const BallStateT<S> k2 = ball_derivative(ball_axpy(x, k1, dt * S(0.5)), params);
  const BallStateT<S> k3 = ball_derivative(ball_axpy(x, k2, dt * S(0.5)), params);
  const BallStateT<S> k4 = ball_derivative(ball_axpy(x, k3, dt), params);
  BallStateT<S> r;
  const S s = dt / S(6);
  r.p = x.p + s * (k1.p + S(2) * k2.p + S(2) * k3.p + k4.p);
  r.v = x.v + s * (k1.v + S(2) * k2.v + S(2) * k3.v + k4.v);
  r.w = x.w + s * (k1.w + S(2) * k2.w + S(2) * k3.w + k4.w);
  r.n = x.n;
  return r;
}

/// Time-indexed ball trajectory on a fixed grid, initial state included.
struct BallTrajectory {
  std::vector<double> t;
  std::vector<BallState> states;

  std::size_t size() const { return states.size(); }
};

BallTrajectory propagate_ball(const BallState& x0, double horizon, double dt,
                              const BallParams& params, Integrator method = Integrator::kRk4);

struct MissResult {
  double d_min = 0.0;
  double t_min = 0.0;
  std::size_t index = 0;
};

/// Minimum distance between a ball trajectory and target positions sampled
/// on the same grid; earliest sample wins ties.
MissResult min_miss_distance(const BallTrajectory& traj, const std::vector<Vec3d>& target);

}  // namespace mavcap

#endif  // MAVCAP_BALLISTICS_HPP_
