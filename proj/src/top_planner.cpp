#include "mavcap/top_planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "mavcap/dual.hpp"

namespace mavcap {

namespace {

template <class S>
S rollout_miss(const PlanProblem& prob, const LaunchKinematics& kin, const S* thrusts, S t1,
               S t2) {
  const S dt1 = t1 / S(static_cast<double>(prob.n1));
  MavStateT<S> x;
  x.p = prob.x0.p.template cast<S>();
  x.v = prob.x0.v.template cast<S>();
  x.q = prob.x0.q.template cast<S>();
  x.w = prob.x0.w.template cast<S>();
  for (int k = 0; k < prob.n1; ++k) {
    RotorThrustsT<S> f;
    f.f << thrusts[4 * k], thrusts[4 * k + 1], thrusts[4 * k + 2], thrusts[4 * k + 3];
    x = integrate_step_euler(x, rotor_mix(f, prob.mav), dt1, prob.mav);
  }
  BallStateT<S> b = ball_initial_state(x, prob.launcher, kin);
  const S dt2 = t2 / S(static_cast<double>(prob.n2));
  for (int k = 0; k < prob.n2; ++k) {
    b = ball_step_euler(b, dt2, prob.ball);
  }
  const Vec3<S> p_t = target_position(prob.target, S(prob.t0) + t1 + t2);
  return (b.p - p_t).norm();
}

struct Rollout {
  std::vector<MavState> mav_traj;
  std::vector<BallState> ball_traj;
  double miss = std::numeric_limits<double>::infinity();
  bool finite = false;
};

Rollout rollout_full(const PlanProblem& prob, const LaunchKinematics& kin,
                     const Eigen::VectorXd& z) {
  Rollout r;
  const double t1 = z[4 * prob.n1];
  const double t2 = z[4 * prob.n1 + 1];
  const double dt1 = t1 / prob.n1;
  r.mav_traj.reserve(prob.n1 + 1);
  MavState x = prob.x0;
  r.mav_traj.push_back(x);
  for (int k = 0; k < prob.n1; ++k) {
    RotorThrusts f;
    f.f << z[4 * k], z[4 * k + 1], z[4 * k + 2], z[4 * k + 3];
    x = integrate_step_euler(x, rotor_mix(f, prob.mav), dt1, prob.mav);
    r.mav_traj.push_back(x);
  }
  BallState b = ball_initial_state(x, prob.launcher, kin);
  r.ball_traj.reserve(prob.n2 + 1);
  r.ball_traj.push_back(b);
  const double dt2 = t2 / prob.n2;
  for (int k = 0; k < prob.n2; ++k) {
    b = ball_step_euler(b, dt2, prob.ball);
    r.ball_traj.push_back(b);
  }
  const Vec3d p_t = target_position(prob.target, prob.t0 + t1 + t2);
  r.miss = (b.p - p_t).norm();
  r.finite = std::isfinite(r.miss) && state_finite(x);
  return r;
}

double rollout_miss_only(const PlanProblem& prob, const LaunchKinematics& kin,
                         const Eigen::VectorXd& z) {
  return rollout_miss<double>(prob, kin, z.data(), z[4 * prob.n1], z[4 * prob.n1 + 1]);
}

struct AlParams {
  double lambda = 0.0;
  double mu = 10.0;
};

class MeritFunction {
 public:
  MeritFunction(const PlanProblem& prob, const LaunchKinematics& kin)
      : prob_(prob), kin_(kin) {}

  double miss(const Eigen::VectorXd& z) const { return rollout_miss_only(prob_, kin_, z); }

  double value(const Eigen::VectorXd& z, const AlParams& al) const {
    const double t1 = z[4 * prob_.n1];
    const double t2 = z[4 * prob_.n1 + 1];
    const double floor = prob_.solver.t_floor;
    if (t1 <= floor || t2 <= floor) return std::numeric_limits<double>::infinity();
    const double m = miss(z);
    if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
    const double g = m - prob_.sigma_d;
    const double active = std::max(0.0, al.lambda + al.mu * g);
    const double psi = (active * active - al.lambda * al.lambda) / (2.0 * al.mu);
    const double barrier =
        -prob_.solver.barrier_coeff * (std::log(t1 - floor) + std::log(t2 - floor));
    return t1 + t2 + psi + barrier;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& z, const AlParams& al) const {
    const int n = prob_.dim();
    const double t1 = z[n - 2];
    const double t2 = z[n - 1];
    const double floor = prob_.solver.t_floor;
    const double m = miss(z);
    const double g = m - prob_.sigma_d;
    const double active = std::max(0.0, al.lambda + al.mu * g);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    grad[n - 2] = 1.0 - prob_.solver.barrier_coeff / (t1 - floor);
    grad[n - 1] = 1.0 - prob_.solver.barrier_coeff / (t2 - floor);
    if (active > 0.0) {
      grad += active * miss_gradient(prob_, z, prob_.solver.gradient_mode);
    }
    return grad;
  }

  // Projected gradient of the plain Lagrangian, used as the KKT residual.
  double kkt_residual(const Eigen::VectorXd& z, double lambda) const {
    const int n = prob_.dim();
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    grad[n - 2] = 1.0;
    grad[n - 1] = 1.0;
    if (lambda > 0.0) {
      grad += lambda * miss_gradient(prob_, z, prob_.solver.gradient_mode);
    }
    return ((z - project(z - grad)) .cwiseAbs()).maxCoeff();
  }

  Eigen::VectorXd project(const Eigen::VectorXd& z) const {
    const int n = prob_.dim();
    Eigen::VectorXd out = z;
    for (int i = 0; i < n - 2; ++i) {
      out[i] = std::clamp(out[i], 0.0, prob_.mav.f_rotor_max);
    }
    const double lo = prob_.solver.t_floor + 1e-9;
    out[n - 2] = std::clamp(out[n - 2], lo, prob_.solver.t_ceil);
    out[n - 1] = std::clamp(out[n - 1], lo, prob_.solver.t_ceil);
    return out;
  }

 private:
  const PlanProblem& prob_;
  const LaunchKinematics& kin_;
};

struct InnerResult {
  Eigen::VectorXd z;
  double merit = 0.0;
  double pg_norm = 0.0;
  long iters = 0;
};

InnerResult lbfgs_descent(const MeritFunction& fn, Eigen::VectorXd z, const AlParams& al,
                          double tol, int max_iters, const SolverConfig& cfg, int outer_idx,
                          std::vector<MeritRecord>* history) {
  const int m = cfg.lbfgs_memory;
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  double f = fn.value(z, al);
  Eigen::VectorXd grad = fn.gradient(z, al);
  InnerResult res;
  res.z = z;
  res.merit = f;

  auto pg_norm = [&](const Eigen::VectorXd& zz, const Eigen::VectorXd& gg) {
    return ((zz - fn.project(zz - gg)).cwiseAbs()).maxCoeff();
  };

  for (int it = 0; it < max_iters; ++it) {
    res.pg_norm = pg_norm(z, grad);
    if (res.pg_norm <= tol) break;

    // two-loop recursion
    Eigen::VectorXd d = -grad;
    if (!s_hist.empty()) {
      std::vector<double> alpha(s_hist.size());
      for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
        const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
        alpha[i] = rho * s_hist[i].dot(d);
        d -= alpha[i] * y_hist[i];
      }
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      d *= gamma;
      for (std::size_t i = 0; i < s_hist.size(); ++i) {
        const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
        const double beta = rho * y_hist[i].dot(d);
        d += (alpha[i] - beta) * s_hist[i];
      }
    }
    if (d.dot(grad) >= 0.0) {
      s_hist.clear();
      y_hist.clear();
      d = -grad;
    }

    // projected backtracking line search
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd z_new;
    double f_new = 0.0;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      z_new = fn.project(z + step * d);
      f_new = fn.value(z_new, al);
      const double pred = grad.dot(z_new - z);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * pred && pred < 0.0) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (s_hist.empty()) break;  // steepest descent stalled
      s_hist.clear();
      y_hist.clear();
      continue;
    }

    Eigen::VectorXd grad_new = fn.gradient(z_new, al);
    Eigen::VectorXd s = z_new - z;
    Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      if (static_cast<int>(s_hist.size()) > m) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    z = std::move(z_new);
    f = f_new;
    grad = std::move(grad_new);
    ++res.iters;
    if (history) history->push_back({outer_idx, f});
    if (std::abs(f - res.merit) < 1e-15 * std::max(1.0, std::abs(f)) && it > 2) {
      res.z = z;
      res.merit = f;
      break;
    }
    res.z = z;
    res.merit = f;
  }
  res.pg_norm = pg_norm(res.z, fn.gradient(res.z, al));
  return res;
}

struct AlOutcome {
  Eigen::VectorXd z;
  double miss = std::numeric_limits<double>::infinity();
  double kkt = std::numeric_limits<double>::infinity();
  bool converged = false;
  int outer_iters = 0;
  long inner_iters = 0;
  std::vector<MeritRecord> history;
};

AlOutcome run_augmented_lagrangian(const PlanProblem& prob, const LaunchKinematics& kin,
                                   Eigen::VectorXd z0) {
  const SolverConfig& cfg = prob.solver;
  MeritFunction fn(prob, kin);
  AlOutcome out;
  out.z = fn.project(std::move(z0));

  AlParams al{0.0, cfg.mu0};
  double inner_tol = 1e-2;
  double prev_violation = std::numeric_limits<double>::infinity();

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    InnerResult inner =
        lbfgs_descent(fn, out.z, al, inner_tol, cfg.max_inner, cfg, outer, &out.history);
    out.z = inner.z;
    out.inner_iters += inner.iters;
    out.outer_iters = outer + 1;

    out.miss = fn.miss(out.z);
    const double g = out.miss - prob.sigma_d;
    const double lambda_next = std::max(0.0, al.lambda + al.mu * g);
    out.kkt = fn.kkt_residual(out.z, lambda_next);

    if (g <= 0.0 && out.kkt <= cfg.kkt_tol) {
      out.converged = true;
      al.lambda = lambda_next;
      break;
    }
    al.lambda = lambda_next;
    const double violation = std::max(0.0, g);
    if (violation > 0.25 * prev_violation) {
      al.mu = std::min(al.mu * cfg.mu_growth, cfg.mu_max);
    }
    prev_violation = std::max(violation, 1e-16);
    inner_tol = std::max(cfg.kkt_tol, 0.3 * inner_tol);
  }
  return out;
}

}  // namespace

Eigen::VectorXd pack_decision(const Eigen::MatrixXd& thrusts, double t1, double t2) {
  const int n1 = static_cast<int>(thrusts.rows());
  Eigen::VectorXd z(4 * n1 + 2);
  for (int k = 0; k < n1; ++k) {
    for (int i = 0; i < 4; ++i) z[4 * k + i] = thrusts(k, i);
  }
  z[4 * n1] = t1;
  z[4 * n1 + 1] = t2;
  return z;
}

TranscribeResult transcribe(const PlanProblem& prob, const Eigen::VectorXd& z) {
  if (z.size() != prob.dim()) throw std::invalid_argument("transcribe: bad decision size");
  const LaunchKinematics kin = launch_kinematics(prob.launcher);
  Rollout r = rollout_full(prob, kin, z);
  TranscribeResult out;
  out.objective = z[4 * prob.n1] + z[4 * prob.n1 + 1];
  out.terminal_miss = r.miss;
  out.finite = r.finite;
  out.mav_traj = std::move(r.mav_traj);
  out.ball_traj = std::move(r.ball_traj);
  double box = 0.0;
  for (int i = 0; i < 4 * prob.n1; ++i) {
    box = std::max({box, -z[i], z[i] - prob.mav.f_rotor_max});
  }
  out.residuals.resize(4);
  out.residuals[0] = r.miss - prob.sigma_d;
  out.residuals[1] = box;
  out.residuals[2] = prob.solver.t_floor - z[4 * prob.n1];
  out.residuals[3] = prob.solver.t_floor - z[4 * prob.n1 + 1];
  return out;
}

Eigen::VectorXd miss_gradient(const PlanProblem& prob, const Eigen::VectorXd& z,
                              GradientMode mode) {
  const int n = prob.dim();
  const LaunchKinematics kin = launch_kinematics(prob.launcher);
  Eigen::VectorXd grad(n);
  if (mode == GradientMode::kForward) {
    std::vector<Dual> thrusts(4 * prob.n1);
    for (int i = 0; i < 4 * prob.n1; ++i) thrusts[i] = Dual(z[i]);
    Dual t1(z[n - 2]), t2(z[n - 1]);
    for (int i = 0; i < n; ++i) {
      if (i < 4 * prob.n1) {
        thrusts[i].dot = 1.0;
      } else if (i == n - 2) {
        t1.dot = 1.0;
      } else {
        t2.dot = 1.0;
      }
      grad[i] = rollout_miss<Dual>(prob, kin, thrusts.data(), t1, t2).dot;
      if (i < 4 * prob.n1) {
        thrusts[i].dot = 0.0;
      } else if (i == n - 2) {
        t1.dot = 0.0;
      } else {
        t2.dot = 0.0;
      }
    }
    return grad;
  }
  Eigen::VectorXd zp = z;
  for (int i = 0; i < n; ++i) {
    const double h = prob.solver.fd_step * std::max(1.0, std::abs(z[i]));
    zp[i] = z[i] + h;
    const double fp = rollout_miss_only(prob, kin, zp);
    zp[i] = z[i] - h;
    const double fm = rollout_miss_only(prob, kin, zp);
    zp[i] = z[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

Eigen::VectorXd initial_guess(const PlanProblem& prob) {
  const LaunchKinematics kin = launch_kinematics(prob.launcher);
  const Vec3d p_t0 = target_position(prob.target, prob.t0);
  const double dist = (p_t0 - prob.x0.p).norm();
  const double horiz = (p_t0 - prob.x0.p).head<2>().norm();
  const double t1 = std::max(0.3, dist / 5.0);
  const double t2 = std::max(0.05, horiz / kin.v_launch);
  Eigen::MatrixXd thrusts(prob.n1, 4);
  thrusts.setConstant(std::clamp(prob.mav.hover_thrust() / 4.0, 0.0, prob.mav.f_rotor_max));
  return pack_decision(thrusts, t1, t2);
}

PlanSolution solve(const PlanProblem& prob, const std::optional<PlanSolution>& warm_start) {
  const LaunchKinematics kin = launch_kinematics(prob.launcher);
  const SolverConfig& cfg = prob.solver;

  std::vector<Eigen::VectorXd> starts;
  if (warm_start && warm_start->thrusts.rows() == prob.n1) {
    starts.push_back(pack_decision(warm_start->thrusts, warm_start->t1, warm_start->t2));
  }
  const Eigen::VectorXd base = initial_guess(prob);
  starts.push_back(base);
  // deterministic restart patterns: differential-thrust tilts and a slower pass
  const int n1 = prob.n1;
  {
    Eigen::VectorXd tilt_up = base;
    Eigen::VectorXd tilt_down = base;
    const double delta = 0.25 * prob.mav.hover_thrust() / 4.0;
    for (int k = 0; k < n1; ++k) {
      const double sign = (k < n1 / 2) ? 1.0 : -1.0;
      // +pitch torque: raise rotors 2,3, lower rotors 1,4
      tilt_up[4 * k + 1] += sign * delta;
      tilt_up[4 * k + 2] += sign * delta;
      tilt_up[4 * k + 0] -= sign * delta;
      tilt_up[4 * k + 3] -= sign * delta;
      tilt_down[4 * k + 1] -= sign * delta;
      tilt_down[4 * k + 2] -= sign * delta;
      tilt_down[4 * k + 0] += sign * delta;
      tilt_down[4 * k + 3] += sign * delta;
    }
    Eigen::VectorXd slow = base;
    slow[4 * n1] *= 1.5;
    slow[4 * n1 + 1] *= 1.5;
    starts.push_back(tilt_up);
    starts.push_back(tilt_down);
    starts.push_back(slow);
  }
  const int max_attempts = std::min<int>(static_cast<int>(starts.size()),
                                         1 + std::max(0, cfg.max_restarts) +
                                             (warm_start ? 1 : 0));

  AlOutcome best;
  bool have_best = false;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    AlOutcome out = run_augmented_lagrangian(prob, kin, starts[attempt]);
    const bool out_feasible = out.miss <= prob.sigma_d;
    const bool best_feasible = have_best && best.miss <= prob.sigma_d;
    const double out_obj = out.z[prob.dim() - 2] + out.z[prob.dim() - 1];
    const double best_obj =
        have_best ? best.z[prob.dim() - 2] + best.z[prob.dim() - 1] : 0.0;
    const bool better = !have_best || (out_feasible && !best_feasible) ||
                        (out_feasible == best_feasible &&
                         (out_feasible ? out_obj < best_obj : out.miss < best.miss));
    if (better) {
      best = std::move(out);
      have_best = true;
    }
    if (best.converged) break;
  }

  PlanSolution sol;
  Rollout r = rollout_full(prob, kin, best.z);
  sol.t1 = best.z[prob.dim() - 2];
  sol.t2 = best.z[prob.dim() - 1];
  sol.thrusts.resize(prob.n1, 4);
  sol.controls.reserve(prob.n1);
  for (int k = 0; k < prob.n1; ++k) {
    RotorThrusts f;
    f.f << best.z[4 * k], best.z[4 * k + 1], best.z[4 * k + 2], best.z[4 * k + 3];
    sol.thrusts.row(k) = f.f.transpose();
    sol.controls.push_back(rotor_mix(f, prob.mav));
  }
  sol.mav_traj = std::move(r.mav_traj);
  sol.ball_traj = std::move(r.ball_traj);
  sol.terminal_miss = r.miss;
  sol.objective = sol.t1 + sol.t2;
  sol.outer_iters = best.outer_iters;
  sol.inner_iters = best.inner_iters;
  sol.kkt_residual = best.kkt;
  sol.merit_history = std::move(best.history);
  if (best.converged) {
    sol.status = SolveStatus::kConverged;
  } else if (sol.terminal_miss <= prob.sigma_d) {
    sol.status = SolveStatus::kMaxIters;
  } else {
    sol.status = SolveStatus::kInfeasible;
  }
  return sol;
}

ControlInput track_plan(const PlanSolution& plan, const MavState& x, double t,
                        const MavParams& params, const TrackGains& gains) {
  const int n1 = static_cast<int>(plan.controls.size());
  const double dt1 = plan.t1 / n1;
  const int k = std::clamp(static_cast<int>(t / dt1), 0, n1 - 1);
  const double frac = std::clamp(t / dt1 - k, 0.0, 1.0);
  const ControlInput& u_ff = plan.controls[k];
  const MavState& a = plan.mav_traj[k];
  const MavState& b = plan.mav_traj[k + 1];
  const Vec3d p_ref = (1.0 - frac) * a.p + frac * b.p;
  const Vec3d v_ref = (1.0 - frac) * a.v + frac * b.v;
  const Vec3d w_ref = (1.0 - frac) * a.w + frac * b.w;

  ControlInput u;
  u.tau = u_ff.tau + params.J.cwiseProduct(gains.k_w.cwiseProduct(w_ref - x.w));
  const Vec3d e3_world = quat_rotate(x.q, Vec3d(0.0, 0.0, 1.0));
  const Vec3d accel_corr = gains.k_p * (p_ref - x.p) + gains.k_v * (v_ref - x.v);
  u.f_sum = u_ff.f_sum + params.m * accel_corr.dot(e3_world);
  return project_feasible(u, params);
}

PlanSolution time_shift_plan(const PlanSolution& plan, double elapsed, double t_floor) {
  PlanSolution shifted;
  const int n1 = static_cast<int>(plan.thrusts.rows());
  shifted.t1 = std::max(plan.t1 - elapsed, 8.0 * t_floor);
  shifted.t2 = plan.t2;
  shifted.thrusts.resize(n1, 4);
  const double dt_old = plan.t1 / n1;
  for (int k = 0; k < n1; ++k) {
    const double tk = elapsed + (k + 0.5) * shifted.t1 / n1;
    const int j = std::clamp(static_cast<int>(tk / dt_old), 0, n1 - 1);
    shifted.thrusts.row(k) = plan.thrusts.row(j);
  }
  return shifted;
}

namespace {

double attitude_angle_deg(const Vec4d& qa, const Vec4d& qb) {
  const double dot = std::abs(qa.dot(qb));
  return 2.0 * std::acos(std::clamp(dot, 0.0, 1.0)) * 180.0 / M_PI;
}

}  // namespace

EpisodeRecord replan_loop(const PlanProblem& prob, const SimStepper& sim,
                          const ReplanConfig& cfg) {
  if (!(cfg.replan_period >= cfg.sim_dt)) {
    throw std::invalid_argument("replan_loop: replan_period must be at least sim_dt");
  }
  EpisodeRecord rec;
  MavState x = prob.x0;
  double t = prob.t0;
  std::optional<PlanSolution> warm;

  auto resolve_launch = [&](const MavState& launch_x, double launch_t) {
    const LaunchKinematics kin = launch_kinematics(prob.launcher);
    const BallState b0 = ball_initial_state(launch_x, prob.launcher, kin);
    rec.ball = propagate_ball(b0, cfg.resolve_horizon, cfg.resolve_dt, prob.ball,
                              Integrator::kRk4);
    std::vector<Vec3d> target_pts;
    target_pts.reserve(rec.ball.size());
    for (double ts : rec.ball.t) {
      target_pts.push_back(target_state(prob.target, launch_t + ts).first);
    }
    const MissResult miss = min_miss_distance(rec.ball, target_pts);
    rec.launched = true;
    rec.launch_time = launch_t;
    rec.launch_state = launch_x;
    rec.miss = miss.d_min;
    rec.flight_time = miss.t_min;
    rec.capture_time = launch_t + miss.t_min;
    rec.success = miss.d_min <= prob.sigma_d;
  };

  while (t < prob.t0 + cfg.max_sim_time) {
    PlanProblem prob_t = prob;
    prob_t.x0 = x;
    prob_t.t0 = t;
    PlanSolution plan = solve(prob_t, warm);
    ++rec.replans;
    if (!plan.feasible(prob.sigma_d)) {
      rec.failed = true;
      rec.last_plan = std::move(plan);
      return rec;
    }

    const MavState& launch_ref = plan.mav_traj.back();
    double tau = 0.0;
    bool replan_due = false;
    while (!replan_due) {
      const double remaining = plan.t1 - tau;
      if (remaining <= cfg.replan_period + 1e-12) {
        const double att_err = attitude_angle_deg(x.q, launch_ref.q);
        const double pos_err = (x.p - launch_ref.p).norm();
        if (att_err <= cfg.att_tol_deg && pos_err <= cfg.pos_tol) {
          resolve_launch(x, t);
          rec.last_plan = std::move(plan);
          return rec;
        }
      }
      if (tau >= plan.t1 - 1e-12) {
        ++rec.windows_missed;
        break;
      }
      if (tau >= cfg.replan_period - 1e-12 && remaining > cfg.replan_period) {
        replan_due = true;
        break;
      }
      const ControlInput u = cfg.use_feedback
                                 ? track_plan(plan, x, tau, prob.mav, cfg.gains)
                                 : plan.controls[std::clamp(
                                       static_cast<int>(tau / (plan.t1 / prob.n1)), 0,
                                       prob.n1 - 1)];
      rec.steps.push_back({t, x, u});
      x = sim(x, u, cfg.sim_dt);
      t += cfg.sim_dt;
      tau += cfg.sim_dt;
      if (t >= prob.t0 + cfg.max_sim_time) break;
    }
    warm = time_shift_plan(plan, tau, prob.solver.t_floor);
    rec.last_plan = std::move(plan);
  }
  rec.failed = true;
  return rec;
}

}  // namespace mavcap
