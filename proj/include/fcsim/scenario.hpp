// Closed-loop scenario harness: wires plant, mission sequencing, outer loops, attitude
// cascade, adaptive bank, allocation and faults into one deterministic run.
#pragma once

#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fcsim/airframe.hpp"
#include "fcsim/allocation.hpp"
#include "fcsim/attitude.hpp"
#include "fcsim/core.hpp"
#include "fcsim/defaults.hpp"
#include "fcsim/metrics.hpp"
#include "fcsim/mission.hpp"
#include "fcsim/position.hpp"
#include "fcsim/rcac_bank.hpp"
#include "fcsim/telemetry.hpp"

namespace fcsim {

struct ScenarioConfig {
  std::string name = "scenario";
  Mission mission = sim_profile();
  double alpha_d = 1.0;     // uniform fixed-gain degradation factor
  bool adaptive = false;    // engage the adaptive bank (mission mode only)
  RcacBankConfig rcac = default_rcac_config();
  std::optional<FaultConfig> fault;
  std::optional<NoiseSpec> noise;
  AircraftParams airframe = default_airframe();
  AttitudeGains attitude_gains = default_attitude_gains();
  AttitudeConfig attitude_cfg = default_attitude_config();
  PositionGains position_gains = default_position_gains();
  Environment env;
  double duration = 180.0;        // [s]
  double dt = 0.004;              // control/integration step [s]
  double start_altitude = 5.0;    // [m] above datum at release
  std::uint64_t seed = 1;

  void validate() const {
    if (name.empty()) throw SimError(ErrorKind::Config, "scenario: name must not be empty");
    if (!(dt > 0.0) || !(duration > 0.0))
      throw SimError(ErrorKind::Config, "scenario: dt and duration must be > 0");
    if (!(alpha_d >= 0.0))
      throw SimError(ErrorKind::Config, "scenario: degradation factor must be >= 0");
    if (!(start_altitude > 0.0))
      throw SimError(ErrorKind::Config, "scenario: start altitude must be > 0");
    airframe.validate();
    mission.validate();
    attitude_gains.validate();
    if (fault) fault->validate();
    rcac.theta.validate();
    rcac.phi.validate();
    rcac.omega_x.validate();
    rcac.omega_y.validate();
    rcac.omega_z.validate();
  }
};

struct RunResult {
  RunSummary summary;
  std::vector<TelemetryRecord> telemetry;
  bool completed = false;  // reached the final mission phase
  double end_time = 0.0;   // [s]
};

inline RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();

  const AircraftParams& p = cfg.airframe;
  const ControlAllocator allocator(p, cfg.env);
  const TrimResult trim = trim_search(p, cfg.env, cfg.mission.cruise_airspeed,
                                      cfg.start_altitude);
  const AttitudeGains gains = degrade(cfg.attitude_gains, cfg.alpha_d);

  PositionGains pos_gains = cfg.position_gains;
  pos_gains.tecs.trim_throttle = trim.cmd.throttle;  // operating point from the trim search
  pos_gains.tecs.trim_pitch = trim.alpha;

  // Release slightly below trim speed at the launch point, heading along the climb leg.
  AircraftState state = trim.state;
  state.r = Vec3(cfg.mission.launch[0], cfg.mission.launch[1], -cfg.start_altitude);
  const Vec3 leg = cfg.mission.target - cfg.mission.launch;
  const double heading = std::atan2(leg[1], leg[0]);
  state.euler[0] = heading;
  const double speed = 0.92 * trim.state.v.head<2>().norm();
  state.v = Vec3(speed * std::cos(heading), speed * std::sin(heading), trim.state.v[2]);

  std::mt19937_64 rng(cfg.seed);
  PhaseState ps;
  PositionState pos_state;
  RateLoopState rate_state;
  RcacBank bank(cfg.rcac, cfg.attitude_cfg.integrator_limit);
  AdaptiveInputs u_next;  // bank output, applied one step later

  RunResult result;
  result.telemetry.reserve(static_cast<std::size_t>(cfg.duration / cfg.dt) + 2);

  const double vt0 = p.cruise_airspeed_true;
  const double vi0 = p.cruise_airspeed_indicated;

  while (state.t <= cfg.duration) {
    Flags flags = 0;
    const Measurements meas =
        measure(state, cfg.env, cfg.noise ? &*cfg.noise : nullptr,
                cfg.noise ? &rng : nullptr);
    const MissionOutput mo = mission_update(meas, cfg.mission, ps);
    if (mo.phase == Phase::Done) {
      result.completed = true;
      break;
    }

    AttitudeSetpoint asp;
    double throttle = 0.0;
    if (mo.mode == PilotMode::Stabilized) {
      const auto& script = (mo.phase == Phase::Climb) ? cfg.mission.climb_script
                                                      : cfg.mission.landing_script;
      const ScriptedCommand sc = scripted_pilot(meas.t - ps.entry_time, script);
      asp = sc.attitude;
      throttle = sc.throttle;
    } else {
      const PositionOutput po = position_update(meas, mo.setpoint, mo.segment, pos_state,
                                                pos_gains, cfg.env.g, cfg.dt, flags);
      asp = AttitudeSetpoint{po.theta_s, po.phi_s};
      throttle = po.throttle;
    }

    const bool adapt_now = cfg.adaptive && mo.mode == PilotMode::Mission;
    const AdaptiveInputs u_apply = adapt_now ? u_next : AdaptiveInputs{};
    const AttitudeDebug dbg =
        attitude_update(meas, asp, gains, rate_state, u_apply, vt0, vi0, cfg.env.g,
                        cfg.dt, cfg.attitude_cfg, flags);
    if (adapt_now) {
      u_next = bank.update(dbg, cfg.dt);
      if (bank.any_frozen()) flags |= flag::kAdaptFrozen;
    }

    SurfaceCommand cmd = allocator.allocate(dbg.alpha_s, throttle, flags);
    cmd = apply_fault(cmd, cfg.fault, meas.t);

    TelemetryRecord r;
    r.t = meas.t;
    r.phase = static_cast<int>(mo.phase);
    r.mode = static_cast<int>(mo.mode);
    r.flags = flags;
    r.r_n = meas.r_m[0];
    r.r_e = meas.r_m[1];
    r.r_d = meas.r_m[2];
    r.h_m = meas.h_m;
    r.psi_m = meas.euler_m[0];
    r.theta_m = meas.euler_m[1];
    r.phi_m = meas.euler_m[2];
    r.wx_m = meas.omega_m[0];
    r.wy_m = meas.omega_m[1];
    r.wz_m = meas.omega_m[2];
    r.v_true = meas.v_true;
    r.v_ind = meas.v_indicated;
    r.v_gnd = meas.v_ground;
    r.h_s = mo.setpoint.h_s;
    r.v_ts = mo.setpoint.v_ts;
    r.theta_s = asp.theta_s;
    r.phi_s = asp.phi_s;
    r.wx_s = dbg.omega_s[0];
    r.wy_s = dbg.omega_s[1];
    r.wz_s = dbg.omega_s[2];
    r.ax_s = dbg.alpha_s[0];
    r.ay_s = dbg.alpha_s[1];
    r.az_s = dbg.alpha_s[2];
    r.ail_l = cmd.aileron_left;
    r.ail_r = cmd.aileron_right;
    r.elev = cmd.elevator;
    r.rud = cmd.rudder;
    r.thr = cmd.throttle;
    r.u_theta = u_apply.u_theta;
    r.u_phi = u_apply.u_phi;
    r.u_wx = u_apply.u_omega[0];
    r.u_wy = u_apply.u_omega[1];
    r.u_wz = u_apply.u_omega[2];
    r.th_theta = bank.theta_channel().theta()[0];
    r.th_phi = bank.phi_channel().theta()[0];
    r.th_wx_p = bank.omega_channel(0).theta()[0];
    r.th_wx_i = bank.omega_channel(0).theta()[1];
    r.th_wy_p = bank.omega_channel(1).theta()[0];
    r.th_wy_i = bank.omega_channel(1).theta()[1];
    r.th_wz_p = bank.omega_channel(2).theta()[0];
    r.th_wz_i = bank.omega_channel(2).theta()[1];
    r.xtrack = cross_track_error(meas.r_m, mo.segment);
    result.telemetry.push_back(r);

    try {
      state = step(state, cmd, cfg.env, p, cfg.dt);
    } catch (const SimError& e) {
      result.summary.failed = true;
      result.summary.failure_reason = e.what();
      break;
    }
  }
  result.end_time = state.t;

  const bool aborted = result.summary.failed;
  const std::string abort_reason = result.summary.failure_reason;
  try {
    result.summary = metrics(result.telemetry, cfg.name);
  } catch (const SimError&) {
    result.summary = RunSummary{};
    result.summary.name = cfg.name;
    result.summary.j_phi = result.summary.j_theta = result.summary.j_traj = std::nan("");
    result.summary.failed = true;
    result.summary.failure_reason = "no loiter-phase telemetry";
  }
  if (aborted) {
    result.summary.failed = true;
    result.summary.failure_reason = abort_reason;
  }
  if (!result.completed && !result.summary.failed) {
    result.summary.failed = ps.phase != Phase::Done;
    if (result.summary.failed) result.summary.failure_reason = "mission incomplete at timeout";
  }
  return result;
}

// Cartesian sweep over degradation factor, adaptation, and (optionally) the fault from
// the base config. The (alpha_d = 1, fixed, no-fault) row anchors normalization and must
// be part of the grid.
struct SweepConfig {
  std::string name = "sweep";
  ScenarioConfig base;
  std::vector<double> alpha_d_list{1.0};
  std::vector<bool> adaptive_list{false};
  std::vector<bool> fault_list{false};
};

struct SweepResult {
  std::vector<RunResult> runs;        // same order as summaries
  std::vector<RunSummary> summaries;  // normalized against the baseline row
};

inline std::string sweep_row_name(double alpha_d, bool adaptive, bool faulted) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "a%.2f_%s%s", alpha_d, adaptive ? "adaptive" : "fixed",
                faulted ? "_fault" : "");
  return buf;
}

inline SweepResult sweep(const SweepConfig& sc) {
  if (sc.alpha_d_list.empty() || sc.adaptive_list.empty() || sc.fault_list.empty())
    throw SimError(ErrorKind::Config, "sweep: empty axis");
  SweepResult out;
  int baseline_idx = -1;
  for (bool faulted : sc.fault_list) {
    if (faulted && !sc.base.fault)
      throw SimError(ErrorKind::Config, "sweep: fault axis enabled but base has no fault");
    for (double ad : sc.alpha_d_list) {
      for (bool adaptive : sc.adaptive_list) {
        ScenarioConfig cfg = sc.base;
        cfg.alpha_d = ad;
        cfg.adaptive = adaptive;
        if (!faulted) cfg.fault.reset();
        cfg.name = sweep_row_name(ad, adaptive, faulted);
        if (ad == 1.0 && !adaptive && !faulted) baseline_idx = static_cast<int>(out.runs.size());
        out.runs.push_back(run_scenario(cfg));
        out.summaries.push_back(out.runs.back().summary);
      }
    }
  }
  if (baseline_idx < 0)
    throw SimError(ErrorKind::Config,
                   "sweep: grid must contain the (alpha_d=1, fixed, no-fault) baseline");
  const RunSummary baseline = out.summaries[static_cast<std::size_t>(baseline_idx)];
  if (baseline.failed)
    throw SimError(ErrorKind::Config, "sweep: baseline run failed: " + baseline.failure_reason);
  for (auto& s : out.summaries) normalize(s, baseline);
  return out;
}

}  // namespace fcsim
