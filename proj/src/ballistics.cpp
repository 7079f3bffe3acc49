#include "mavcap/ballistics.hpp"

#include <cmath>

namespace mavcap {

BallTrajectory propagate_ball(const BallState& x0, double horizon, double dt,
                              const BallParams& params, Integrator method) {
  if (!(horizon > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("propagate_ball: horizon and dt must be positive");
  }
  if (!x0.p.allFinite() || !x0.v.allFinite() || !std::isfinite(x0.w) || !x0.n.allFinite()) {
    throw std::invalid_argument("propagate_ball: non-finite initial state");
  }
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  BallTrajectory traj;
  traj.t.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  BallState x = x0;
  traj.t.push_back(0.0);
  traj.states.push_back(x);
  for (std::size_t k = 0; k < steps; ++k) {
    x = method == Integrator::kEuler ? ball_step_euler(x, dt, params)
                                     : ball_step_rk4(x, dt, params);
    traj.t.push_back(static_cast<double>(k + 1) * dt);
    traj.states.push_back(x);
  }
  return traj;
}

MissResult min_miss_distance(const BallTrajectory& traj, const std::vector<Vec3d>& target) {
  if (traj.states.empty()) throw std::invalid_argument("min_miss_distance: empty trajectory");
  if (target.size() != traj.states.size()) {
    throw std::invalid_argument("min_miss_distance: trajectories must share the time grid");
  }
  MissResult r;
  r.d_min = (traj.states[0].p - target[0]).norm();
  r.t_min = traj.t[0];
  r.index = 0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double d = (traj.states[k].p - target[k]).norm();
    if (d < r.d_min) {
      r.d_min = d;
      r.t_min = traj.t[k];
      r.index = k;
    }
  }
  return r;
}

}  // namespace mavcap
