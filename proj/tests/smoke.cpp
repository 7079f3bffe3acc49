#include <chrono>
#include <cstdio>
#include "mavcap/top_planner.hpp"
using namespace mavcap;
int main() {
  for (const Vec3d start : {Vec3d(-5, 0, 4), Vec3d(0, 0, 6), Vec3d(0, 0, 2)}) {
    PlanProblem prob;
    prob.x0.p = start;
    prob.target = StaticTarget{Vec3d(0, 0, 4)};
    ReplanConfig cfg;
    SimStepper rk4 = [&](const MavState& x, const ControlInput& u, double dt) {
      return integrate_step(x, u, dt, prob.mav, Integrator::kRk4);
    };
    auto tic = std::chrono::steady_clock::now();
    EpisodeRecord rec = replan_loop(prob, rk4, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
    std::printf("start [%2g %g %g]: launched=%d success=%d miss=%.4f t_launch=%.3f capture=%.3f replans=%d missedwin=%d (%.2f s)\n",
                start[0], start[1], start[2], rec.launched, rec.success, rec.miss,
                rec.launch_time, rec.capture_time, rec.replans, rec.windows_missed, secs);
  }
  return 0;
}
