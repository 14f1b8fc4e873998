// Mission sequencing: climb-out toward the work area, timed loiter, straight-in landing.
// Emits the active path segment and position setpoint; altitude setpoints are continuous
// across every phase transition.
#pragma once

#include <vector>

#include "fcsim/airframe.hpp"
#include "fcsim/attitude.hpp"
#include "fcsim/core.hpp"
#include "fcsim/guidance.hpp"
#include "fcsim/position.hpp"

namespace fcsim {

enum class Phase { Climb, Loiter, Land, Done };
enum class PilotMode { Mission, Stabilized };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Climb: return "climb";
    case Phase::Loiter: return "loiter";
    case Phase::Land: return "land";
    case Phase::Done: return "done";
  }
  return "?";
}

// Piecewise-linear attitude script for hand-flown (stabilized) phases; time is relative
// to phase entry.
struct ScriptPoint {
  double t = 0.0;        // [s] since phase entry
  double theta_s = 0.0;  // [rad]
  double phi_s = 0.0;    // [rad]
  double throttle = 0.0; // [0, 1]
};

struct Mission {
  Vec3 launch{0, 0, 0};        // horizontal launch point, NED [m]
  Vec3 target{0, 0, 0};        // climb-out aim point
  Vec3 loiter_center{0, 0, 0};
  double loiter_radius = 0.0;  // [m]
  int loiter_direction = 1;    // +1 clockwise
  double loiter_duration = 0.0;  // [s]
  Vec3 land_p0{0, 0, 0};       // landing line start (approach fix)
  Vec3 land_p1{0, 0, 0};       // landing line end (far end of the strip)
  double climb_altitude = 0.0;   // working altitude [m]
  double glide_slope = 0.105;    // descent slope on final [rad-ish, tan]
  double cruise_airspeed = 0.0;  // V_T setpoint [m/s]
  double capture_factor = 1.5;   // loiter capture radius multiple
  double touchdown_altitude = 1.0;  // [m], ends the mission
  // Stabilized brackets (flight-test profile): scripted climb-out and landing.
  bool stabilized_brackets = false;
  std::vector<ScriptPoint> climb_script;
  std::vector<ScriptPoint> landing_script;

  void validate() const {
    if (!(loiter_radius > 0.0)) throw SimError(ErrorKind::Config, "mission: loiter radius");
    if (!(loiter_duration > 0.0)) throw SimError(ErrorKind::Config, "mission: loiter duration");
    if (!(climb_altitude > 0.0)) throw SimError(ErrorKind::Config, "mission: climb altitude");
    if (!(cruise_airspeed > 0.0)) throw SimError(ErrorKind::Config, "mission: cruise airspeed");
    if (loiter_direction != 1 && loiter_direction != -1)
      throw SimError(ErrorKind::Config, "mission: loiter direction must be +1/-1");
    if ((land_p1 - land_p0).head<2>().norm() < 1e-9)
      throw SimError(ErrorKind::Config, "mission: landing line endpoints coincide");
    if ((target - launch).head<2>().norm() < 1e-9)
      throw SimError(ErrorKind::Config, "mission: target coincides with launch");
    if (stabilized_brackets && (climb_script.empty() || landing_script.empty()))
      throw SimError(ErrorKind::Config, "mission: stabilized brackets need scripts");
  }
};

struct PhaseState {
  Phase phase = Phase::Climb;
  PilotMode mode = PilotMode::Mission;
  double entry_time = 0.0;  // [s] absolute time of entry into `phase`
};

struct MissionOutput {
  PositionSetpoint setpoint;
  PathSegment segment;
  Phase phase = Phase::Climb;
  PilotMode mode = PilotMode::Mission;
};

namespace detail {

inline Vec3 closest_on_segment(const Vec3& pos, const PathSegment& seg, double h_s) {
  Vec3 r;
  if (seg.kind == PathSegment::Kind::Line) {
    const double dn = seg.p1[0] - seg.p0[0], de = seg.p1[1] - seg.p0[1];
    const double len2 = dn * dn + de * de;
    const double along = ((pos[0] - seg.p0[0]) * dn + (pos[1] - seg.p0[1]) * de) / len2;
    r = Vec3(seg.p0[0] + along * dn, seg.p0[1] + along * de, -h_s);
  } else {
    double rel_n = pos[0] - seg.center[0], rel_e = pos[1] - seg.center[1];
    const double d = std::hypot(rel_n, rel_e);
    if (d < 1e-9) {  // at the exact center: pick the northern point
      rel_n = 1.0;
      rel_e = 0.0;
    } else {
      rel_n /= d;
      rel_e /= d;
    }
    r = Vec3(seg.center[0] + seg.radius * rel_n, seg.center[1] + seg.radius * rel_e, -h_s);
  }
  return r;
}

// Distance remaining to the far end of the landing line, measured along the line.
inline double landing_distance_to_go(const Vec3& pos, const Mission& ms) {
  const double dn = ms.land_p1[0] - ms.land_p0[0], de = ms.land_p1[1] - ms.land_p0[1];
  const double len = std::hypot(dn, de);
  const double along = ((pos[0] - ms.land_p0[0]) * dn + (pos[1] - ms.land_p0[1]) * de) / len;
  return len - along;
}

}  // namespace detail

// Phase transitions fire before the setpoint for this step is produced, so the emitted
// altitude setpoint is continuous through each transition by construction.
inline MissionOutput mission_update(const Measurements& m, const Mission& ms,
                                    PhaseState& ps) {
  // --- transitions (forward-only) ---
  if (ps.phase == Phase::Climb) {
    const double dn = m.r_m[0] - ms.loiter_center[0], de = m.r_m[1] - ms.loiter_center[1];
    const double dist = std::hypot(dn, de);
    const double closing = m.ground_vel[0] * dn + m.ground_vel[1] * de;  // d/dt dist^2 / 2
    if (dist <= ms.capture_factor * ms.loiter_radius && closing < 0.0) {
      ps.phase = Phase::Loiter;
      ps.entry_time = m.t;
    }
  }
  if (ps.phase == Phase::Loiter && m.t - ps.entry_time >= ms.loiter_duration) {
    ps.phase = Phase::Land;
    ps.entry_time = m.t;
  }
  if (ps.phase == Phase::Land && m.h_m <= ms.touchdown_altitude) {
    ps.phase = Phase::Done;
    ps.entry_time = m.t;
  }
  ps.mode = (ms.stabilized_brackets && ps.phase != Phase::Loiter) ? PilotMode::Stabilized
                                                                  : PilotMode::Mission;

  // --- setpoints ---
  MissionOutput out;
  out.phase = ps.phase;
  out.mode = ps.mode;
  double h_s = ms.climb_altitude;
  switch (ps.phase) {
    case Phase::Climb: {
      Vec3 a = ms.launch, b = ms.target;
      a[2] = b[2] = -ms.climb_altitude;
      out.segment = PathSegment::line(a, b);
      break;
    }
    case Phase::Loiter: {
      Vec3 c = ms.loiter_center;
      c[2] = -ms.climb_altitude;
      out.segment = PathSegment::arc(c, ms.loiter_radius, ms.loiter_direction);
      break;
    }
    case Phase::Land:
    case Phase::Done: {
      out.segment = PathSegment::line(ms.land_p0, ms.land_p1);
      const double to_go = detail::landing_distance_to_go(m.r_m, ms);
      h_s = clamp(ms.glide_slope * to_go, 0.0, ms.climb_altitude);
      break;
    }
  }
  out.setpoint.h_s = h_s;
  out.setpoint.v_ts = ms.cruise_airspeed;
  out.setpoint.r_s = detail::closest_on_segment(m.r_m, out.segment, h_s);
  return out;
}

// Attitude setpoint + throttle for hand-flown phases: linear interpolation over the
// script, endpoints held outside its time span.
struct ScriptedCommand {
  AttitudeSetpoint attitude;
  double throttle = 0.0;
};

inline ScriptedCommand scripted_pilot(double t_in_phase, const std::vector<ScriptPoint>& script) {
  if (script.empty()) throw SimError(ErrorKind::Config, "scripted_pilot: empty script");
  ScriptedCommand c;
  if (t_in_phase <= script.front().t) {
    c.attitude = {script.front().theta_s, script.front().phi_s};
    c.throttle = script.front().throttle;
    return c;
  }
  if (t_in_phase >= script.back().t) {
    c.attitude = {script.back().theta_s, script.back().phi_s};
    c.throttle = script.back().throttle;
    return c;
  }
  for (std::size_t i = 1; i < script.size(); ++i) {
    if (t_in_phase <= script[i].t) {
      const auto& a = script[i - 1];
      const auto& b = script[i];
      const double w = (t_in_phase - a.t) / (b.t - a.t);
      c.attitude = {a.theta_s + w * (b.theta_s - a.theta_s),
                    a.phi_s + w * (b.phi_s - a.phi_s)};
      c.throttle = a.throttle + w * (b.throttle - a.throttle);
      return c;
    }
  }
  c.attitude = {script.back().theta_s, script.back().phi_s};
  c.throttle = script.back().throttle;
  return c;
}

// Desk-study mission: autonomous throughout. Launch at the origin heading north, work
// area 250 m out, 30 m-radius loiter for one minute, straight-in landing to the east.
inline Mission sim_profile() {
  Mission ms;
  ms.launch = Vec3(0, 0, 0);
  ms.target = Vec3(250, 0, 0);
  ms.loiter_center = Vec3(250, 30, 0);
  ms.loiter_radius = 30.0;
  ms.loiter_direction = 1;
  ms.loiter_duration = 60.0;
  ms.land_p0 = Vec3(280, 60, 0);
  ms.land_p1 = Vec3(650, 60, 0);
  ms.climb_altitude = 20.0;
  ms.cruise_airspeed = 15.0;
  ms.stabilized_brackets = false;
  return ms;
}

// Flight-test style mission: hand-flown climb-out and landing (scripted), autonomous
// 20 m loiter in between.
inline Mission exp_profile() {
  Mission ms;
  ms.launch = Vec3(0, 0, 0);
  ms.target = Vec3(200, 0, 0);
  ms.loiter_center = Vec3(200, 25, 0);
  ms.loiter_radius = 20.0;
  ms.loiter_direction = 1;
  ms.loiter_duration = 60.0;
  ms.land_p0 = Vec3(230, 60, 0);
  ms.land_p1 = Vec3(600, 60, 0);
  ms.climb_altitude = 20.0;
  ms.cruise_airspeed = 12.0;
  ms.stabilized_brackets = true;
  ms.climb_script = {{0.0, 0.12, 0.0, 0.9},
                     {10.0, 0.12, 0.0, 0.9},
                     {14.0, 0.04, 0.0, 0.65}};
  ms.landing_script = {{0.0, 0.0, 0.0, 0.45},
                       {4.0, -0.04, 0.0, 0.3},
                       {30.0, -0.04, 0.0, 0.25}};
  return ms;
}

}  // namespace fcsim
