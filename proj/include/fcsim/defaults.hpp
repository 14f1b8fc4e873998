// Built-in 1.5 m-class foam trainer and the stock controller tuning used by the
// scenarios and tests. Airframe values mirror data/airframes/sparrow15.json.
#pragma once

#include "fcsim/airframe.hpp"
#include "fcsim/attitude.hpp"
#include "fcsim/position.hpp"
#include "fcsim/rcac.hpp"

namespace fcsim {

inline AircraftParams default_airframe() {
  AircraftParams p;
  p.mass = 1.4;
  p.inertia = Vec3(0.08, 0.11, 0.16);
  p.wing_area = 0.38;
  p.wing_span = 1.6;
  p.chord = 0.24;
  p.cl0 = 0.25;
  p.cl_alpha = 5.0;
  p.alpha_max = 0.30;
  p.cd0 = 0.035;
  p.induced_k = 0.05;
  p.cm0 = 0.02;
  p.cm_alpha = -0.8;
  p.cm_q = -14.0;
  p.cm_delta_e = -1.0;
  p.cy_beta = -0.35;
  p.cl_beta = -0.06;
  p.cl_p = -0.45;
  p.cl_r = 0.08;
  p.cl_delta_a = 0.20;
  p.cn_beta = 0.08;
  p.cn_p = -0.02;
  p.cn_r = -0.09;
  p.cn_delta_r = -0.06;
  p.aileron_limit = 0.349;
  p.elevator_limit = 0.436;
  p.rudder_limit = 0.436;
  p.max_thrust = 6.0;
  p.cruise_airspeed_true = 15.0;
  p.cruise_airspeed_indicated = 15.0;
  return p;
}

inline AttitudeGains default_attitude_gains() {
  AttitudeGains g;
  g.k_theta = 3.0;
  g.k_phi = 3.5;
  g.k_omega_ff = Vec3(12.0, 8.0, 2.0);
  g.k_omega_p = Vec3(18.0, 15.0, 6.0);
  g.k_omega_i = Vec3(40.0, 40.0, 10.0);
  return g;
}

inline AttitudeConfig default_attitude_config() {
  AttitudeConfig c;
  c.v_min = 5.0;
  c.integrator_limit = Vec3(0.4, 0.4, 0.4);
  return c;
}

inline PositionGains default_position_gains() {
  PositionGains k;
  k.tecs.throttle_p = 0.004;
  k.tecs.throttle_i = 0.0015;
  k.tecs.throttle_damp = 0.002;
  k.tecs.pitch_p = 0.002;
  k.tecs.pitch_i = 0.0008;
  k.tecs.pitch_damp = 0.001;
  k.tecs.trim_throttle = 0.35;   // refined from the trim search at scenario start
  k.tecs.trim_pitch = 0.02;
  k.tecs.integ_limit_throttle = 100.0;
  k.tecs.integ_limit_pitch = 100.0;
  k.tecs.theta_min = -0.4;
  k.tecs.theta_max = 0.5;
  k.tecs.v_min = 8.0;
  k.tecs.underspeed_pitch = -0.1;
  k.guidance.period = 4.2;
  k.guidance.damping = 0.75;
  k.guidance.bank_limit = 0.873;
  return k;
}

// Adaptive-channel hyperparameters. The angle channels carry the desk-study defaults
// (P0 = 1, Ru = 1e-3, Rz = 1, sigma = -0.1); sigma is negative on every channel because
// the control direction from each adaptive input to its tracking error is negative.
// theta_max defaults to 10x the corresponding nominal fixed gain.
struct RcacBankConfig {
  RcacHyper theta;
  RcacHyper phi;
  RcacHyper omega_x;
  RcacHyper omega_y;
  RcacHyper omega_z;
};

inline RcacBankConfig default_rcac_config() {
  RcacBankConfig c;  // shared scalars are the RcacHyper defaults
  const AttitudeGains g = default_attitude_gains();
  c.theta.theta_max = 10.0 * g.k_theta;
  c.phi.theta_max = 10.0 * g.k_phi;
  // PI channels: one bound covering both components, from the larger nominal gain.
  c.omega_x.theta_max = 10.0 * std::max(g.k_omega_p[0], g.k_omega_i[0]);
  c.omega_y.theta_max = 10.0 * std::max(g.k_omega_p[1], g.k_omega_i[1]);
  c.omega_z.theta_max = 10.0 * std::max(g.k_omega_p[2], g.k_omega_i[2]);
  return c;
}

}  // namespace fcsim
