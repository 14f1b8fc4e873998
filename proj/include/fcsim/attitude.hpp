// Cascaded attitude control: proportional angle loops feeding a coordinated-turn
// kinematic map, then airspeed-scheduled PI rate loops producing an angular-acceleration
// setpoint. Adaptive inputs enter additively at the angle-rate and rate-loop summing
// junctions and are zero when adaptation is off.
#pragma once

#include "fcsim/airframe.hpp"
#include "fcsim/core.hpp"

namespace fcsim {

// The 11 tunable degrees of freedom of the fixed attitude cascade.
struct AttitudeGains {
  double k_theta = 0.0;        // pitch-angle loop [1/s]
  double k_phi = 0.0;          // roll-angle loop [1/s]
  Vec3 k_omega_ff{0, 0, 0};    // rate feedforward diagonal [1/s]
  Vec3 k_omega_p{0, 0, 0};     // rate proportional diagonal [1/s]
  Vec3 k_omega_i{0, 0, 0};     // rate integral diagonal [1/s^2]

  void validate() const {
    const double all[11] = {k_theta, k_phi,
                            k_omega_ff[0], k_omega_ff[1], k_omega_ff[2],
                            k_omega_p[0], k_omega_p[1], k_omega_p[2],
                            k_omega_i[0], k_omega_i[1], k_omega_i[2]};
    for (double g : all)
      if (!std::isfinite(g)) throw SimError(ErrorKind::Config, "attitude gains: non-finite");
  }
};

// Uniformly scales all 11 gains; alpha_d = 1 is nominal, alpha_d = 0 removes the fixed
// controller entirely (cold start for the adaptive augmentation).
inline AttitudeGains degrade(const AttitudeGains& g, double alpha_d) {
  if (!(alpha_d >= 0.0))
    throw SimError(ErrorKind::Config, "degrade: degradation factor must be >= 0");
  AttitudeGains d = g;
  d.k_theta *= alpha_d;
  d.k_phi *= alpha_d;
  d.k_omega_ff *= alpha_d;
  d.k_omega_p *= alpha_d;
  d.k_omega_i *= alpha_d;
  return d;
}

struct AttitudeSetpoint {
  double theta_s = 0.0;  // pitch [rad]
  double phi_s = 0.0;    // roll [rad]
};

// Additive adaptive inputs; all zero reproduces the fixed controller exactly.
struct AdaptiveInputs {
  double u_theta = 0.0;      // pitch-rate summing junction [rad/s]
  double u_phi = 0.0;        // roll-rate summing junction [rad/s]
  Vec3 u_omega{0, 0, 0};     // rate-loop output summing junction [rad/s^2]
};

struct AttitudeConfig {
  double v_min = 5.0;                 // airspeed floor for scheduling/turn kinematics [m/s]
  Vec3 integrator_limit{0.4, 0.4, 0.4};  // |integral of rate error| bound per axis [rad]
  double scale_min = 0.25;            // airspeed-scaling clamp
  double scale_max = 4.0;
};

struct RateLoopState {
  Vec3 integrator{0, 0, 0};  // accumulated (omega_s - omega_m) dt per axis [rad]
};

inline double pitch_rate_setpoint(double theta_s, double theta_m, double k_theta,
                                  double u_theta) {
  return k_theta * (theta_s - theta_m) + u_theta;
}

inline double roll_rate_setpoint(double phi_s, double phi_m, double k_phi, double u_phi) {
  return k_phi * (phi_s - phi_m) + u_phi;
}

// Coordinated-turn yaw-rate setpoint g*tan(phi_s)*cos(theta_s)/V_T, with the airspeed
// floored at v_min (flagged) to keep the quotient bounded.
inline double turn_rate_setpoint(double phi_s, double theta_s, double v_true, double g,
                                 double v_min, Flags& flags) {
  double v = v_true;
  if (v < v_min) {
    v = v_min;
    flags |= flag::kAirspeedFloor;
  }
  return g * std::tan(phi_s) * std::cos(theta_s) / v;
}

// Euler-rate setpoints (phi_dot, theta_dot, psi_dot) -> body-rate setpoint at the
// measured attitude. Requires |theta_m| < pi/2.
inline Vec3 euler_rates_to_body(double theta_m, double phi_m, const Vec3& euler_rates) {
  return euler_rate_to_body_map(theta_m, phi_m) * euler_rates;
}

// Airspeed-scheduled PI rate loop with feedforward:
//   alpha_s = clamp(V_T0/V_T) * k_ff.*omega_s
//           + clamp((V_I0/V_I)^2) * (k_p.*e + k_i.*integ)
//           + u_omega,
// e = omega_s - omega_m. The integral term is strictly proper: alpha_s uses the
// accumulator from before this step, then integ += e*dt, clamped per axis.
inline Vec3 angular_accel_setpoint(const Vec3& omega_s, const Vec3& omega_m, double v_true,
                                   double v_indicated, double vt0, double vi0,
                                   const AttitudeGains& gains, RateLoopState& state,
                                   const Vec3& u_omega, double dt,
                                   const AttitudeConfig& cfg, Flags& flags) {
  double vt = v_true, vi = v_indicated;
  if (vt < cfg.v_min || vi < cfg.v_min) {
    vt = std::max(vt, cfg.v_min);
    vi = std::max(vi, cfg.v_min);
    flags |= flag::kAirspeedFloor;
  }
  const double f_ff = clamp(vt0 / vt, cfg.scale_min, cfg.scale_max);
  const double f_pi = clamp((vi0 / vi) * (vi0 / vi), cfg.scale_min, cfg.scale_max);

  const Vec3 e = omega_s - omega_m;
  Vec3 alpha_s;
  for (int i = 0; i < 3; ++i) {
    alpha_s[i] = f_ff * gains.k_omega_ff[i] * omega_s[i] +
                 f_pi * (gains.k_omega_p[i] * e[i] + gains.k_omega_i[i] * state.integrator[i]) +
                 u_omega[i];
  }
  for (int i = 0; i < 3; ++i) {
    state.integrator[i] = clamp(state.integrator[i] + e[i] * dt,
                                -cfg.integrator_limit[i], cfg.integrator_limit[i]);
  }
  return alpha_s;
}

// Intermediate signals of one attitude update; the angle and rate errors are the
// performance variables consumed by the adaptive channels.
struct AttitudeDebug {
  double theta_err = 0.0;   // theta_s - theta_m [rad]
  double phi_err = 0.0;     // phi_s - phi_m [rad]
  Vec3 euler_rate_s{0, 0, 0};  // (phi_dot_s, theta_dot_s, psi_dot_s) [rad/s]
  Vec3 omega_s{0, 0, 0};    // body-rate setpoint [rad/s]
  Vec3 omega_err{0, 0, 0};  // omega_s - omega_m [rad/s]
  Vec3 alpha_s{0, 0, 0};    // angular-acceleration setpoint [rad/s^2]
};

// Full cascade for one control step. vt0/vi0 are the scheduling reference airspeeds.
inline AttitudeDebug attitude_update(const Measurements& m, const AttitudeSetpoint& sp,
                                     const AttitudeGains& gains, RateLoopState& state,
                                     const AdaptiveInputs& u, double vt0, double vi0,
                                     double g, double dt, const AttitudeConfig& cfg,
                                     Flags& flags) {
  AttitudeDebug d;
  d.theta_err = sp.theta_s - m.euler_m[1];
  d.phi_err = sp.phi_s - m.euler_m[2];
  d.euler_rate_s[0] = roll_rate_setpoint(sp.phi_s, m.euler_m[2], gains.k_phi, u.u_phi);
  d.euler_rate_s[1] = pitch_rate_setpoint(sp.theta_s, m.euler_m[1], gains.k_theta, u.u_theta);
  d.euler_rate_s[2] = turn_rate_setpoint(sp.phi_s, sp.theta_s, m.v_true, g, cfg.v_min, flags);
  d.omega_s = euler_rates_to_body(m.euler_m[1], m.euler_m[2], d.euler_rate_s);
  d.omega_err = d.omega_s - m.omega_m;
  d.alpha_s = angular_accel_setpoint(d.omega_s, m.omega_m, m.v_true, m.v_indicated, vt0,
                                     vi0, gains, state, u.u_omega, dt, cfg, flags);
  return d;
}

}  // namespace fcsim
