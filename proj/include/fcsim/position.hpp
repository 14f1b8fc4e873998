// Outer position loop: energy controller (altitude/airspeed -> throttle, pitch setpoint)
// plus lateral path guidance (ground track -> bank setpoint).
#pragma once

#include "fcsim/airframe.hpp"
#include "fcsim/core.hpp"
#include "fcsim/guidance.hpp"
#include "fcsim/tecs.hpp"

namespace fcsim {

struct PositionSetpoint {
  Vec3 r_s{0, 0, 0};     // closest point on the active path, NED [m] (z = -h_s)
  double h_s = 0.0;      // altitude setpoint [m]
  double v_ts = 0.0;     // true-airspeed setpoint [m/s]
};

struct PositionGains {
  TecsGains tecs;
  GuidanceConfig guidance;
};

struct PositionState {
  TecsState tecs;
  double last_phi_s = 0.0;   // held through degenerate guidance geometry
  double last_v_true = -1.0; // previous airspeed for the energy-rate estimate (< 0 = unset)
};

struct PositionOutput {
  double throttle = 0.0;
  double theta_s = 0.0;  // [rad]
  double phi_s = 0.0;    // [rad]
};

inline PositionOutput position_update(const Measurements& m, const PositionSetpoint& sp,
                                      const PathSegment& seg, PositionState& state,
                                      const PositionGains& k, double g, double dt,
                                      Flags& flags) {
  const double climb_rate = -m.ground_vel[2];
  const double accel =
      (state.last_v_true >= 0.0) ? (m.v_true - state.last_v_true) / dt : 0.0;
  state.last_v_true = m.v_true;

  const TecsOutput te = tecs_update(sp.h_s, m.h_m, sp.v_ts, m.v_true, climb_rate, accel,
                                    state.tecs, k.tecs, g, dt, flags);
  PositionOutput out;
  out.throttle = te.throttle;
  out.theta_s = te.theta_s;
  out.phi_s = lateral_guidance(m.r_m, m.ground_vel, seg, k.guidance, g, state.last_phi_s,
                               flags);
  state.last_phi_s = out.phi_s;
  return out;
}

}  // namespace fcsim
