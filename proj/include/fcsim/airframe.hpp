// Rigid-body fixed-wing plant: linear-derivative aero model, RK4 integration,
// surface faults, and sensor extraction.
#pragma once

#include <optional>
#include <random>

#include "fcsim/core.hpp"

namespace fcsim {

struct AircraftState {
  Vec3 r{0, 0, 0};      // NED position [m]
  Vec3 v{0, 0, 0};      // NED velocity [m/s]
  Vec3 euler{0, 0, 0};  // (psi yaw, theta pitch, phi roll) [rad]
  Vec3 omega{0, 0, 0};  // body rates (p, q, r) [rad/s]
  double t = 0.0;       // [s]

  double altitude() const { return -r[2]; }
};

struct AircraftParams {
  double mass = 0.0;            // [kg]
  Vec3 inertia{0, 0, 0};        // principal inertia diagonal (Jx, Jy, Jz) [kg m^2]
  double wing_area = 0.0;       // S [m^2]
  double wing_span = 0.0;       // b [m]
  double chord = 0.0;           // mean chord [m]

  // Longitudinal coefficients
  double cl0 = 0.0;             // lift at zero alpha
  double cl_alpha = 0.0;        // lift slope [1/rad]
  double alpha_max = 0.0;       // lift held constant above this alpha [rad]
  double cd0 = 0.0;             // parasitic drag
  double induced_k = 0.0;       // CD = cd0 + induced_k * CL^2
  double cm0 = 0.0;
  double cm_alpha = 0.0;        // [1/rad]
  double cm_q = 0.0;            // pitch damping (per c/2V-normalized q)
  double cm_delta_e = 0.0;      // [1/rad elevator]

  // Lateral-directional coefficients
  double cy_beta = 0.0;         // [1/rad]
  double cl_beta = 0.0;
  double cl_p = 0.0;            // roll damping (per b/2V-normalized p)
  double cl_r = 0.0;
  double cl_delta_a = 0.0;      // roll per rad of single-aileron deflection
  double cn_beta = 0.0;
  double cn_p = 0.0;
  double cn_r = 0.0;            // yaw damping
  double cn_delta_r = 0.0;      // [1/rad rudder]

  // Actuators: normalized commands in [-1, 1] scale to these deflection limits.
  double aileron_limit = 0.0;   // [rad]
  double elevator_limit = 0.0;  // [rad]
  double rudder_limit = 0.0;    // [rad]
  double max_thrust = 0.0;      // [N], throttle in [0, 1]

  double cruise_airspeed_true = 0.0;       // V_T0, gain-scheduling reference [m/s]
  double cruise_airspeed_indicated = 0.0;  // V_I0 [m/s]

  void validate() const {
    auto need_pos = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw SimError(ErrorKind::Config, std::string("airframe: ") + name + " must be > 0");
    };
    need_pos(mass, "mass");
    need_pos(inertia[0], "Jx");
    need_pos(inertia[1], "Jy");
    need_pos(inertia[2], "Jz");
    need_pos(wing_area, "wing_area");
    need_pos(wing_span, "wing_span");
    need_pos(chord, "chord");
    need_pos(aileron_limit, "aileron_limit");
    need_pos(elevator_limit, "elevator_limit");
    need_pos(rudder_limit, "rudder_limit");
    need_pos(max_thrust, "max_thrust");
    need_pos(cruise_airspeed_true, "cruise_airspeed_true");
    need_pos(cruise_airspeed_indicated, "cruise_airspeed_indicated");
    need_pos(alpha_max, "alpha_max");
  }
};

// Normalized actuator commands; surfaces in [-1, 1], throttle in [0, 1].
struct SurfaceCommand {
  double aileron_left = 0.0;
  double aileron_right = 0.0;
  double elevator = 0.0;
  double rudder = 0.0;
  double throttle = 0.0;

  SurfaceCommand clamped() const {
    SurfaceCommand c = *this;
    c.aileron_left = clamp(c.aileron_left, -1.0, 1.0);
    c.aileron_right = clamp(c.aileron_right, -1.0, 1.0);
    c.elevator = clamp(c.elevator, -1.0, 1.0);
    c.rudder = clamp(c.rudder, -1.0, 1.0);
    c.throttle = clamp(c.throttle, 0.0, 1.0);
    return c;
  }
};

enum class Surface { AileronLeft, AileronRight, Elevator, Rudder, Throttle };

// Actuator stuck at a fixed value from t_start onward.
struct FaultConfig {
  Surface surface = Surface::AileronLeft;
  double stuck_value = 0.0;  // normalized units of the affected actuator
  double t_start = 0.0;      // [s]

  void validate() const {
    if (!std::isfinite(stuck_value) || !std::isfinite(t_start))
      throw SimError(ErrorKind::Config, "fault: non-finite field");
    const double lo = (surface == Surface::Throttle) ? 0.0 : -1.0;
    if (stuck_value < lo || stuck_value > 1.0)
      throw SimError(ErrorKind::Config, "fault: stuck_value outside actuator range");
    if (t_start < 0.0) throw SimError(ErrorKind::Config, "fault: t_start must be >= 0");
  }
};

struct Environment {
  Vec3 wind{0, 0, 0};     // steady NED wind [m/s]
  double rho = kRhoSea;   // air density [kg/m^3]
  double rho0 = kRhoSea;  // reference density for indicated airspeed
  double g = kGravity;    // [m/s^2]
};

// Per-channel standard deviations for additive zero-mean measurement noise.
struct NoiseSpec {
  double pos = 0.0;       // [m], each NED axis
  double euler = 0.0;     // [rad], each angle
  double omega = 0.0;     // [rad/s], each body rate
  double airspeed = 0.0;  // [m/s], true airspeed
};

struct Measurements {
  Vec3 r_m{0, 0, 0};        // NED position [m]
  double h_m = 0.0;         // altitude above launch datum [m], = -r_m.z
  Vec3 euler_m{0, 0, 0};    // (psi, theta, phi) [rad]
  Vec3 omega_m{0, 0, 0};    // (p, q, r) [rad/s]
  double v_true = 0.0;      // airspeed magnitude [m/s]
  double v_indicated = 0.0; // v_true * sqrt(rho/rho0) [m/s]
  double v_ground = 0.0;    // horizontal ground speed [m/s]
  Vec3 ground_vel{0, 0, 0}; // NED inertial velocity [m/s]
  double t = 0.0;           // [s]
};

// Body-frame aerodynamic force and moment. Lift saturates above alpha_max; damping terms
// use the conventional b/2V (c/2V) normalization. Aileron roll torque is antisymmetric in
// the pair: l += qbar*S*b*cl_delta_a*(da_left - da_right).
inline std::pair<Vec3, Vec3> aero_forces_moments(const AircraftState& state,
                                                 const SurfaceCommand& cmd,
                                                 const Environment& env,
                                                 const AircraftParams& p) {
  const Mat3 r_be = rotation_body_to_earth(state.euler[0], state.euler[1], state.euler[2]);
  const Vec3 v_air_b = r_be.transpose() * (state.v - env.wind);
  const double vt = v_air_b.norm();
  if (vt < 1e-9) return {Vec3::Zero(), Vec3::Zero()};

  const double alpha = std::atan2(v_air_b[2], v_air_b[0]);
  const double beta = std::asin(clamp(v_air_b[1] / vt, -1.0, 1.0));
  const double qbar = 0.5 * env.rho * vt * vt;

  const double alpha_lift = clamp(alpha, -p.alpha_max, p.alpha_max);
  const double cl_lift = p.cl0 + p.cl_alpha * alpha_lift;
  const double cd = p.cd0 + p.induced_k * cl_lift * cl_lift;
  const double lift = qbar * p.wing_area * cl_lift;
  const double drag = qbar * p.wing_area * cd;
  const double side = qbar * p.wing_area * p.cy_beta * beta;

  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const Vec3 force(-drag * ca + lift * sa, side, -drag * sa - lift * ca);

  const SurfaceCommand c = cmd.clamped();
  const double da_l = c.aileron_left * p.aileron_limit;
  const double da_r = c.aileron_right * p.aileron_limit;
  const double de = c.elevator * p.elevator_limit;
  const double dr = c.rudder * p.rudder_limit;

  const double bn = p.wing_span / (2.0 * vt);  // rate normalizations
  const double cn = p.chord / (2.0 * vt);
  const double pp = state.omega[0], qq = state.omega[1], rr = state.omega[2];

  const double c_roll = p.cl_beta * beta + p.cl_p * bn * pp + p.cl_r * bn * rr +
                        p.cl_delta_a * (da_l - da_r);
  const double c_pitch = p.cm0 + p.cm_alpha * alpha + p.cm_q * cn * qq + p.cm_delta_e * de;
  const double c_yaw = p.cn_beta * beta + p.cn_p * bn * pp + p.cn_r * bn * rr +
                       p.cn_delta_r * dr;

  const Vec3 moment(qbar * p.wing_area * p.wing_span * c_roll,
                    qbar * p.wing_area * p.chord * c_pitch,
                    qbar * p.wing_area * p.wing_span * c_yaw);
  return {force, moment};
}

namespace detail {

struct StateDeriv {
  Vec3 r_dot, v_dot, euler_dot, omega_dot;
};

inline StateDeriv dynamics(const AircraftState& s, const SurfaceCommand& cmd,
                           const Environment& env, const AircraftParams& p) {
  auto [f_aero, m_aero] = aero_forces_moments(s, cmd, env, p);
  const Vec3 f_body = f_aero + Vec3(clamp(cmd.throttle, 0.0, 1.0) * p.max_thrust, 0.0, 0.0);
  const Mat3 r_be = rotation_body_to_earth(s.euler[0], s.euler[1], s.euler[2]);

  StateDeriv d;
  d.r_dot = s.v;
  d.v_dot = r_be * f_body / p.mass + Vec3(0.0, 0.0, env.g);
  const Vec3 er = body_rates_to_euler_rates(s.euler[1], s.euler[2], s.omega);
  d.euler_dot = Vec3(er[2], er[1], er[0]);  // store order (psi, theta, phi)
  const Vec3 j_omega(p.inertia[0] * s.omega[0], p.inertia[1] * s.omega[1],
                     p.inertia[2] * s.omega[2]);
  const Vec3 torque = m_aero - s.omega.cross(j_omega);
  d.omega_dot = Vec3(torque[0] / p.inertia[0], torque[1] / p.inertia[1],
                     torque[2] / p.inertia[2]);

  if (!all_finite(d.v_dot))
    throw SimError(ErrorKind::NonFinite, "dynamics: non-finite acceleration");
  if (!all_finite(d.euler_dot))
    throw SimError(ErrorKind::NonFinite, "dynamics: non-finite Euler-angle rate");
  if (!all_finite(d.omega_dot))
    throw SimError(ErrorKind::NonFinite, "dynamics: non-finite angular acceleration");
  return d;
}

inline AircraftState advance(const AircraftState& s, const StateDeriv& d, double h) {
  AircraftState n = s;
  n.r += h * d.r_dot;
  n.v += h * d.v_dot;
  n.euler += h * d.euler_dot;
  n.omega += h * d.omega_dot;
  return n;
}

}  // namespace detail

// One fixed-step RK4 step with the command held over [t, t+dt]. Yaw and roll are wrapped to
// (-pi, pi]; pitch is guarded away from the gimbal singularity.
inline AircraftState step(const AircraftState& s, const SurfaceCommand& cmd,
                          const Environment& env, const AircraftParams& p, double dt) {
  if (!(dt > 0.0)) throw SimError(ErrorKind::Config, "step: dt must be > 0");
  using detail::advance;
  const auto k1 = detail::dynamics(s, cmd, env, p);
  const auto k2 = detail::dynamics(advance(s, k1, 0.5 * dt), cmd, env, p);
  const auto k3 = detail::dynamics(advance(s, k2, 0.5 * dt), cmd, env, p);
  const auto k4 = detail::dynamics(advance(s, k3, dt), cmd, env, p);

  AircraftState n = s;
  const double w = dt / 6.0;
  n.r += w * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot);
  n.v += w * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
  n.euler += w * (k1.euler_dot + 2.0 * k2.euler_dot + 2.0 * k3.euler_dot + k4.euler_dot);
  n.omega += w * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
  n.t = s.t + dt;

  if (std::abs(n.euler[1]) >= kPi / 2.0 - 0.01)
    throw SimError(ErrorKind::GimbalGuard, "step: pitch reached gimbal guard");
  n.euler[0] = wrap_pi(n.euler[0]);
  n.euler[2] = wrap_pi(n.euler[2]);
  return n;
}

// Overrides the faulted actuator once t >= t_start; other channels pass through.
inline SurfaceCommand apply_fault(const SurfaceCommand& cmd,
                                  const std::optional<FaultConfig>& fault, double t) {
  if (!fault || t < fault->t_start) return cmd;
  SurfaceCommand c = cmd;
  switch (fault->surface) {
    case Surface::AileronLeft: c.aileron_left = fault->stuck_value; break;
    case Surface::AileronRight: c.aileron_right = fault->stuck_value; break;
    case Surface::Elevator: c.elevator = fault->stuck_value; break;
    case Surface::Rudder: c.rudder = fault->stuck_value; break;
    case Surface::Throttle: c.throttle = fault->stuck_value; break;
  }
  return c;
}

// Sensor extraction. Noise draws (when enabled) consume the generator in a fixed order:
// position xyz, euler psi/theta/phi, omega pqr, airspeed.
inline Measurements measure(const AircraftState& s, const Environment& env,
                            const NoiseSpec* noise = nullptr,
                            std::mt19937_64* rng = nullptr) {
  Measurements m;
  m.r_m = s.r;
  m.euler_m = s.euler;
  m.omega_m = s.omega;
  m.ground_vel = s.v;
  double vt = (s.v - env.wind).norm();

  if (noise && rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < 3; ++i) m.r_m[i] += noise->pos * n01(*rng);
    for (int i = 0; i < 3; ++i) m.euler_m[i] += noise->euler * n01(*rng);
    for (int i = 0; i < 3; ++i) m.omega_m[i] += noise->omega * n01(*rng);
    vt += noise->airspeed * n01(*rng);
  }

  m.h_m = -m.r_m[2];
  m.v_true = std::max(0.0, vt);
  m.v_indicated = m.v_true * std::sqrt(env.rho / env.rho0);
  m.v_ground = std::hypot(s.v[0], s.v[1]);
  m.t = s.t;
  return m;
}

struct TrimResult {
  AircraftState state;   // wings-level state at the requested airspeed, heading north
  SurfaceCommand cmd;    // elevator + throttle holding it
  double alpha = 0.0;    // trim angle of attack [rad]
};

// Newton search for steady wings-level flight at the requested true airspeed (no wind):
// unknowns (alpha, elevator, throttle), residual (forward accel, vertical accel, pitch
// angular accel). Throws TrimFailure if residuals do not reach tolerance.
inline TrimResult trim_search(const AircraftParams& p, const Environment& env,
                              double v_target, double altitude = 0.0) {
  if (!(v_target > 0.0)) throw SimError(ErrorKind::Config, "trim: airspeed must be > 0");

  auto make = [&](double alpha, double de, double thr) {
    AircraftState s;
    s.r = Vec3(0.0, 0.0, -altitude);
    s.v = Vec3(v_target, 0.0, 0.0);  // level flight path, heading north
    s.euler = Vec3(0.0, alpha, 0.0);
    SurfaceCommand c;
    c.elevator = de;
    c.throttle = thr;
    return std::make_pair(s, c);
  };
  auto residual = [&](const Eigen::Vector3d& x) {
    auto [s, c] = make(x[0], x[1], x[2]);
    Environment calm = env;
    calm.wind = Vec3::Zero();
    const auto d = detail::dynamics(s, c, calm, p);
    return Eigen::Vector3d(d.v_dot[0], d.v_dot[2], d.omega_dot[1]);
  };

  Eigen::Vector3d x(0.02, 0.0, 0.5);
  const double tol = 1e-9;
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector3d f = residual(x);
    if (f.norm() < tol) break;
    Eigen::Matrix3d jac;
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d xp = x;
      xp[j] += h;
      jac.col(j) = (residual(xp) - f) / h;
    }
    x -= jac.fullPivLu().solve(f);
    x[2] = clamp(x[2], 0.0, 1.0);
  }
  if (residual(x).norm() >= 1e-6)
    throw SimError(ErrorKind::TrimFailure, "trim: residual above tolerance");

  TrimResult t;
  auto [s, c] = make(x[0], x[1], x[2]);
  t.state = s;
  t.cmd = c;
  t.alpha = x[0];
  return t;
}

}  // namespace fcsim
