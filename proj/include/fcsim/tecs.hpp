// Total-energy control: throttle regulates specific total energy, pitch regulates the
// energy balance (potential minus kinetic), decoupling altitude from airspeed.
#pragma once

#include "fcsim/core.hpp"

namespace fcsim {

struct TecsGains {
  double throttle_p = 0.0;     // [1/(m^2/s^2)] per unit specific-energy error
  double throttle_i = 0.0;
  double throttle_damp = 0.0;  // on measured energy rate
  double pitch_p = 0.0;        // [rad/(m^2/s^2)] per unit balance error
  double pitch_i = 0.0;
  double pitch_damp = 0.0;
  double trim_throttle = 0.0;  // feedforward operating point
  double trim_pitch = 0.0;     // [rad]
  double integ_limit_throttle = 0.0;  // |energy integral| bound [m^2/s^2 * s]
  double integ_limit_pitch = 0.0;
  double theta_min = -0.4;     // pitch setpoint clamp [rad]
  double theta_max = 0.5;
  double v_min = 0.0;          // underspeed-protection threshold [m/s]
  double underspeed_pitch = -0.1;  // [rad]
};

struct TecsState {
  double energy_integ = 0.0;   // integral of specific-energy error
  double balance_integ = 0.0;  // integral of balance error
};

struct TecsOutput {
  double throttle = 0.0;  // [0, 1]
  double theta_s = 0.0;   // pitch setpoint [rad]
};

// One energy-controller step. climb_rate is +up [m/s]; accel is d(V_T)/dt [m/s^2].
// Integrators are strictly proper (output uses the pre-step accumulators) and clamp-limited.
// Underspeed overrides both channels: full throttle, pitch-down, integrators held.
inline TecsOutput tecs_update(double h_s, double h_m, double v_ts, double v_t,
                              double climb_rate, double accel, TecsState& state,
                              const TecsGains& k, double g, double dt, Flags& flags) {
  if (v_t <= k.v_min) {
    flags |= flag::kUnderspeed;
    return {1.0, k.underspeed_pitch};
  }

  const double pot_err = g * (h_s - h_m);                    // specific potential energy
  const double kin_err = 0.5 * (v_ts * v_ts - v_t * v_t);    // specific kinetic energy
  const double energy_err = pot_err + kin_err;
  const double balance_err = pot_err - kin_err;
  const double energy_rate = g * climb_rate + v_t * accel;   // measured d/dt of total
  const double balance_rate = g * climb_rate - v_t * accel;

  TecsOutput out;
  out.throttle = clamp(k.trim_throttle + k.throttle_p * energy_err +
                           k.throttle_i * state.energy_integ - k.throttle_damp * energy_rate,
                       0.0, 1.0);
  const double theta_raw = k.trim_pitch + k.pitch_p * balance_err +
                           k.pitch_i * state.balance_integ - k.pitch_damp * balance_rate;
  out.theta_s = clamp(theta_raw, k.theta_min, k.theta_max);
  if (out.theta_s != theta_raw) flags |= flag::kPitchClamp;

  state.energy_integ = clamp(state.energy_integ + energy_err * dt,
                             -k.integ_limit_throttle, k.integ_limit_throttle);
  state.balance_integ = clamp(state.balance_integ + balance_err * dt,
                              -k.integ_limit_pitch, k.integ_limit_pitch);
  return out;
}

}  // namespace fcsim
