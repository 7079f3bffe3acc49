#include "mavcap/launcher.hpp"

#include <cmath>

namespace mavcap {

LaunchKinematics launch_kinematics(const LauncherParams& params) {
  params.validate();
  const double sum_r = params.r_f + params.r_b;
  LaunchKinematics kin;
  kin.l_b = 2.0 * std::sqrt(sum_r * sum_r - params.l_off * params.l_off);
  kin.theta = 2.0 * std::acos(params.l_off / sum_r);
  kin.dt_contact = (kin.theta + kin.l_b / params.r_f) / params.w_f;
  kin.v_launch = kin.l_b / kin.dt_contact;
  kin.w_b0 = (params.r_f * params.w_f - kin.v_launch) / params.r_b;
  return kin;
}

}  // namespace mavcap
