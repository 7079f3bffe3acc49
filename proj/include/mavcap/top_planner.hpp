#ifndef MAVCAP_TOP_PLANNER_HPP_
#define MAVCAP_TOP_PLANNER_HPP_

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mavcap/ballistics.hpp"
#include "mavcap/launcher.hpp"
#include "mavcap/mav_dynamics.hpp"
#include "mavcap/target_motion.hpp"

namespace mavcap {

enum class GradientMode { kForward, kFiniteDifference };

struct SolverConfig {
  int max_outer = 50;
  int max_inner = 200;
  double kkt_tol = 1e-4;
  double mu0 = 10.0;
  double mu_growth = 5.0;
  double mu_max = 1e8;
  double t_floor = 1e-3;        // lower bound on the free durations, s
  double t_ceil = 50.0;
  double barrier_coeff = 1e-8;  // log-barrier weight keeping t1, t2 above the floor
  double fd_step = 1e-6;        // relative central-difference step
  GradientMode gradient_mode = GradientMode::kForward;
  int lbfgs_memory = 8;
  int max_restarts = 3;
  int max_backtracks = 40;
};

/// Free-final-time capture program: minimize t1 + t2 over per-rotor thrust
/// sequences and both durations, subject to the MAV reaching a launch state
/// whose ball lands within sigma_d of the target.
struct PlanProblem {
  MavState x0;
  TargetMotion target;
  double t0 = 0.0;  // absolute time of x0; target is predicted at t0 + t1 + t2
  int n1 = 20;      // MAV horizon steps
  int n2 = 20;      // ball horizon steps
  double sigma_d = 0.1;
  MavParams mav;
  LauncherParams launcher;
  BallParams ball;
  SolverConfig solver;

  int dim() const { return 4 * n1 + 2; }
};

enum class SolveStatus { kConverged, kMaxIters, kInfeasible };

struct MeritRecord {
  int outer = 0;
  double merit = 0.0;
};

struct PlanSolution {
  std::vector<ControlInput> controls;  // n1 entries
  Eigen::MatrixXd thrusts;             // n1 x 4 per-rotor decision values
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<MavState> mav_traj;    // n1+1 states on the Euler grid
  std::vector<BallState> ball_traj;  // n2+1 states on the Euler grid
  double terminal_miss = std::numeric_limits<double>::infinity();
  double objective = std::numeric_limits<double>::infinity();
  SolveStatus status = SolveStatus::kInfeasible;

  int outer_iters = 0;
  long inner_iters = 0;
  double kkt_residual = std::numeric_limits<double>::infinity();
  std::vector<MeritRecord> merit_history;  // accepted inner iterates, tagged by outer index

  bool feasible(double sigma_d) const { return terminal_miss <= sigma_d; }
};

struct TranscribeResult {
  double objective = 0.0;       // t1 + t2
  double terminal_miss = 0.0;   // d(N2)
  Eigen::VectorXd residuals;    // [miss - sigma_d, max thrust-box violation, floor - t1, floor - t2]
  std::vector<MavState> mav_traj;
  std::vector<BallState> ball_traj;
  bool finite = true;
};

/// Packs [thrusts row-major (n1 x 4), t1, t2] exactly as solve() consumes it.
Eigen::VectorXd pack_decision(const Eigen::MatrixXd& thrusts, double t1, double t2);

/// Single-shooting evaluation of the capture program at a decision vector:
/// dynamics are eliminated by forward Euler rollout, so the residuals are
/// the terminal miss inequality, the thrust box, and the duration floors.
TranscribeResult transcribe(const PlanProblem& prob, const Eigen::VectorXd& z);

/// Gradient of the terminal miss with respect to the decision vector, by
/// forward-mode duals through the rollout or central finite differences.
Eigen::VectorXd miss_gradient(const PlanProblem& prob, const Eigen::VectorXd& z,
                              GradientMode mode);

/// Initial guess per the problem's heuristics: hover thrusts, durations
/// scaled from target range.
Eigen::VectorXd initial_guess(const PlanProblem& prob);

/// Augmented-Lagrangian solve of the transcribed program. Local method:
/// outer multiplier/penalty updates around a projected L-BFGS descent.
PlanSolution solve(const PlanProblem& prob,
                   const std::optional<PlanSolution>& warm_start = std::nullopt);

struct TrackGains {
  Vec3d k_w = Vec3d(20.0, 20.0, 20.0);  // body-rate feedback, 1/s
  double k_p = 25.0;                    // position error to thrust, 1/s^2
  double k_v = 8.0;                     // velocity error to thrust, 1/s
};

/// Feedforward control from the plan at time t plus body-rate feedback and a
/// body-z thrust correction from position/velocity error; actuator-projected.
ControlInput track_plan(const PlanSolution& plan, const MavState& x, double t,
                        const MavParams& params, const TrackGains& gains = {});

using SimStepper = std::function<MavState(const MavState&, const ControlInput&, double)>;

struct ReplanConfig {
  double replan_period = 0.1;
  double sim_dt = 0.01;
  bool use_feedback = true;
  double att_tol_deg = 10.0;  // launch-window attitude tolerance
  double pos_tol = 0.1;       // launch-window position tolerance, m
  double max_sim_time = 10.0;
  double resolve_dt = 0.005;      // ball resolution grid
  double resolve_horizon = 1.0;   // flight window scanned for the miss
  TrackGains gains;
};

struct EpisodeStep {
  double t = 0.0;
  MavState x;
  ControlInput u;
};

struct EpisodeRecord {
  bool launched = false;
  bool success = false;
  bool failed = false;
  double miss = std::numeric_limits<double>::infinity();
  double launch_time = std::numeric_limits<double>::quiet_NaN();
  double flight_time = std::numeric_limits<double>::quiet_NaN();  // launch to closest approach
  double capture_time = std::numeric_limits<double>::quiet_NaN();
  MavState launch_state;
  BallTrajectory ball;
  std::vector<EpisodeStep> steps;
  int replans = 0;
  int windows_missed = 0;
  PlanSolution last_plan;
};

/// Receding-horizon execution: solve, track, launch when the executed state
/// matches the planned launch state inside the final replan cycle, re-solve
/// (warm-started from the time-shifted plan) otherwise.
EpisodeRecord replan_loop(const PlanProblem& prob, const SimStepper& sim,
                          const ReplanConfig& cfg);

/// Warm start shifted forward by `elapsed` seconds of executed plan time.
PlanSolution time_shift_plan(const PlanSolution& plan, double elapsed, double t_floor);

}  // namespace mavcap

#endif  // MAVCAP_TOP_PLANNER_HPP_
