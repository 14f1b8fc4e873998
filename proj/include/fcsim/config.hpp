// JSON loaders for airframe, scenario and sweep files. Unknown keys are rejected so
// config typos fail loudly; field names and units are documented in the README.
#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "fcsim/airframe.hpp"
#include "fcsim/core.hpp"
#include "fcsim/scenario.hpp"

namespace fcsim {

using Json = nlohmann::json;

namespace config_detail {

inline void check_keys(const Json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SimError(ErrorKind::Config, where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key()))
      throw SimError(ErrorKind::Config, where + ": unknown key '" + it.key() + "'");
  }
}

inline double num(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key))
    throw SimError(ErrorKind::Config, where + ": missing key '" + key + "'");
  if (!j[key].is_number())
    throw SimError(ErrorKind::Config, where + ": '" + key + "' must be a number");
  return j[key].get<double>();
}

inline double num_or(const Json& j, const std::string& where, const char* key, double dflt) {
  return j.contains(key) ? num(j, where, key) : dflt;
}

inline Vec3 vec3(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
    throw SimError(ErrorKind::Config, where + ": '" + key + "' must be a 3-element array");
  return Vec3(j[key][0].get<double>(), j[key][1].get<double>(), j[key][2].get<double>());
}

inline Vec3 vec3_or(const Json& j, const std::string& where, const char* key, const Vec3& d) {
  return j.contains(key) ? vec3(j, where, key) : d;
}

inline Json load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SimError(ErrorKind::Config, "cannot open " + path);
  Json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw SimError(ErrorKind::Config, path + ": " + e.what());
  }
  return j;
}

}  // namespace config_detail

inline Json load_json(const std::string& path) { return config_detail::load_file(path); }

inline AircraftParams airframe_from_json(const Json& j, const std::string& where) {
  using namespace config_detail;
  check_keys(j, where,
             {"schema_version", "name", "mass_kg", "inertia_kgm2", "wing_area_m2",
              "wing_span_m", "chord_m", "aero", "actuators", "cruise"});
  if (num(j, where, "schema_version") != 1)
    throw SimError(ErrorKind::Config, where + ": unsupported schema_version");

  AircraftParams p;
  p.mass = num(j, where, "mass_kg");
  p.inertia = vec3(j, where, "inertia_kgm2");
  p.wing_area = num(j, where, "wing_area_m2");
  p.wing_span = num(j, where, "wing_span_m");
  p.chord = num(j, where, "chord_m");

  if (!j.contains("aero")) throw SimError(ErrorKind::Config, where + ": missing 'aero'");
  const Json& a = j["aero"];
  const std::string wa = where + ".aero";
  check_keys(a, wa,
             {"cl0", "cl_alpha", "alpha_max", "cd0", "induced_k", "cm0", "cm_alpha", "cm_q",
              "cm_delta_e", "cy_beta", "cl_beta", "cl_p", "cl_r", "cl_delta_a", "cn_beta",
              "cn_p", "cn_r", "cn_delta_r"});
  p.cl0 = num(a, wa, "cl0");
  p.cl_alpha = num(a, wa, "cl_alpha");
  p.alpha_max = num(a, wa, "alpha_max");
  p.cd0 = num(a, wa, "cd0");
  p.induced_k = num(a, wa, "induced_k");
  p.cm0 = num(a, wa, "cm0");
  p.cm_alpha = num(a, wa, "cm_alpha");
  p.cm_q = num(a, wa, "cm_q");
  p.cm_delta_e = num(a, wa, "cm_delta_e");
  p.cy_beta = num(a, wa, "cy_beta");
  p.cl_beta = num(a, wa, "cl_beta");
  p.cl_p = num(a, wa, "cl_p");
  p.cl_r = num(a, wa, "cl_r");
  p.cl_delta_a = num(a, wa, "cl_delta_a");
  p.cn_beta = num(a, wa, "cn_beta");
  p.cn_p = num(a, wa, "cn_p");
  p.cn_r = num(a, wa, "cn_r");
  p.cn_delta_r = num(a, wa, "cn_delta_r");

  if (!j.contains("actuators"))
    throw SimError(ErrorKind::Config, where + ": missing 'actuators'");
  const Json& act = j["actuators"];
  const std::string wact = where + ".actuators";
  check_keys(act, wact,
             {"aileron_limit_rad", "elevator_limit_rad", "rudder_limit_rad", "max_thrust_n"});
  p.aileron_limit = num(act, wact, "aileron_limit_rad");
  p.elevator_limit = num(act, wact, "elevator_limit_rad");
  p.rudder_limit = num(act, wact, "rudder_limit_rad");
  p.max_thrust = num(act, wact, "max_thrust_n");

  if (!j.contains("cruise")) throw SimError(ErrorKind::Config, where + ": missing 'cruise'");
  const Json& c = j["cruise"];
  const std::string wc = where + ".cruise";
  check_keys(c, wc, {"v_true_ms", "v_indicated_ms"});
  p.cruise_airspeed_true = num(c, wc, "v_true_ms");
  p.cruise_airspeed_indicated = num(c, wc, "v_indicated_ms");

  p.validate();
  return p;
}

inline AircraftParams load_airframe(const std::string& path) {
  return airframe_from_json(config_detail::load_file(path),
                            std::filesystem::path(path).filename().string());
}

namespace config_detail {

inline RcacHyper rcac_channel_from_json(const Json& j, const std::string& where,
                                        const RcacHyper& dflt) {
  check_keys(j, where, {"P0", "Ru", "Rz", "sigma", "theta0", "theta_max", "enabled"});
  RcacHyper h = dflt;
  h.p0 = num_or(j, where, "P0", dflt.p0);
  h.ru = num_or(j, where, "Ru", dflt.ru);
  h.rz = num_or(j, where, "Rz", dflt.rz);
  h.sigma = num_or(j, where, "sigma", dflt.sigma);
  if (j.contains("theta0")) {
    if (!j["theta0"].is_array())
      throw SimError(ErrorKind::Config, where + ": 'theta0' must be an array");
    h.theta0 = j["theta0"].get<std::vector<double>>();
  }
  if (j.contains("theta_max")) {
    if (j["theta_max"].is_null())
      h.theta_max.reset();
    else
      h.theta_max = num(j, where, "theta_max");
  }
  if (j.contains("enabled")) {
    if (!j["enabled"].is_boolean())
      throw SimError(ErrorKind::Config, where + ": 'enabled' must be a boolean");
    h.enabled = j["enabled"].get<bool>();
  }
  h.validate();
  return h;
}

inline Mission mission_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string id = j.get<std::string>();
    if (id == "sim_profile") return sim_profile();
    if (id == "exp_profile") return exp_profile();
    throw SimError(ErrorKind::Config, where + ": unknown mission '" + id + "'");
  }
  check_keys(j, where,
             {"launch", "target", "loiter_center", "loiter_radius", "loiter_direction",
              "loiter_duration_s", "land_p0", "land_p1", "climb_altitude_m", "glide_slope",
              "cruise_airspeed_ms", "capture_factor", "touchdown_altitude_m"});
  Mission ms = sim_profile();
  ms.launch = vec3_or(j, where, "launch", ms.launch);
  ms.target = vec3_or(j, where, "target", ms.target);
  ms.loiter_center = vec3_or(j, where, "loiter_center", ms.loiter_center);
  ms.loiter_radius = num_or(j, where, "loiter_radius", ms.loiter_radius);
  ms.loiter_direction = static_cast<int>(num_or(j, where, "loiter_direction",
                                                ms.loiter_direction));
  ms.loiter_duration = num_or(j, where, "loiter_duration_s", ms.loiter_duration);
  ms.land_p0 = vec3_or(j, where, "land_p0", ms.land_p0);
  ms.land_p1 = vec3_or(j, where, "land_p1", ms.land_p1);
  ms.climb_altitude = num_or(j, where, "climb_altitude_m", ms.climb_altitude);
  ms.glide_slope = num_or(j, where, "glide_slope", ms.glide_slope);
  ms.cruise_airspeed = num_or(j, where, "cruise_airspeed_ms", ms.cruise_airspeed);
  ms.capture_factor = num_or(j, where, "capture_factor", ms.capture_factor);
  ms.touchdown_altitude = num_or(j, where, "touchdown_altitude_m", ms.touchdown_altitude);
  ms.validate();
  return ms;
}

inline Surface surface_from_string(const std::string& s, const std::string& where) {
  if (s == "aileron_left") return Surface::AileronLeft;
  if (s == "aileron_right") return Surface::AileronRight;
  if (s == "elevator") return Surface::Elevator;
  if (s == "rudder") return Surface::Rudder;
  if (s == "throttle") return Surface::Throttle;
  throw SimError(ErrorKind::Config, where + ": unknown surface '" + s + "'");
}

inline AttitudeGains attitude_gains_from_json(const Json& j, const std::string& where,
                                              const AttitudeGains& dflt) {
  check_keys(j, where, {"k_theta", "k_phi", "k_omega_ff", "k_omega_p", "k_omega_i"});
  AttitudeGains g = dflt;
  g.k_theta = num_or(j, where, "k_theta", dflt.k_theta);
  g.k_phi = num_or(j, where, "k_phi", dflt.k_phi);
  g.k_omega_ff = vec3_or(j, where, "k_omega_ff", dflt.k_omega_ff);
  g.k_omega_p = vec3_or(j, where, "k_omega_p", dflt.k_omega_p);
  g.k_omega_i = vec3_or(j, where, "k_omega_i", dflt.k_omega_i);
  g.validate();
  return g;
}

inline void outer_gains_from_json(const Json& j, const std::string& where, PositionGains& k) {
  check_keys(j, where, {"tecs", "guidance"});
  if (j.contains("tecs")) {
    const Json& t = j["tecs"];
    const std::string wt = where + ".tecs";
    check_keys(t, wt,
               {"throttle_p", "throttle_i", "throttle_damp", "pitch_p", "pitch_i",
                "pitch_damp", "integ_limit_throttle", "integ_limit_pitch", "theta_min_rad",
                "theta_max_rad", "v_min_ms", "underspeed_pitch_rad"});
    k.tecs.throttle_p = num_or(t, wt, "throttle_p", k.tecs.throttle_p);
    k.tecs.throttle_i = num_or(t, wt, "throttle_i", k.tecs.throttle_i);
    k.tecs.throttle_damp = num_or(t, wt, "throttle_damp", k.tecs.throttle_damp);
    k.tecs.pitch_p = num_or(t, wt, "pitch_p", k.tecs.pitch_p);
    k.tecs.pitch_i = num_or(t, wt, "pitch_i", k.tecs.pitch_i);
    k.tecs.pitch_damp = num_or(t, wt, "pitch_damp", k.tecs.pitch_damp);
    k.tecs.integ_limit_throttle = num_or(t, wt, "integ_limit_throttle", k.tecs.integ_limit_throttle);
    k.tecs.integ_limit_pitch = num_or(t, wt, "integ_limit_pitch", k.tecs.integ_limit_pitch);
    k.tecs.theta_min = num_or(t, wt, "theta_min_rad", k.tecs.theta_min);
    k.tecs.theta_max = num_or(t, wt, "theta_max_rad", k.tecs.theta_max);
    k.tecs.v_min = num_or(t, wt, "v_min_ms", k.tecs.v_min);
    k.tecs.underspeed_pitch = num_or(t, wt, "underspeed_pitch_rad", k.tecs.underspeed_pitch);
  }
  if (j.contains("guidance")) {
    const Json& g = j["guidance"];
    const std::string wg = where + ".guidance";
    check_keys(g, wg, {"period_s", "damping", "bank_limit_rad", "min_speed_ms"});
    k.guidance.period = num_or(g, wg, "period_s", k.guidance.period);
    k.guidance.damping = num_or(g, wg, "damping", k.guidance.damping);
    k.guidance.bank_limit = num_or(g, wg, "bank_limit_rad", k.guidance.bank_limit);
    k.guidance.min_speed = num_or(g, wg, "min_speed_ms", k.guidance.min_speed);
  }
}

}  // namespace config_detail

// base_dir resolves a relative "airframe" path (usually the scenario file's directory).
inline ScenarioConfig scenario_from_json(const Json& j, const std::string& where,
                                         const std::filesystem::path& base_dir = {}) {
  using namespace config_detail;
  check_keys(j, where,
             {"name", "mission", "airframe", "degradation_factor", "adaptive", "rcac",
              "fault", "env", "noise", "duration_s", "dt_s", "seed", "start_altitude_m",
              "attitude_gains", "attitude_config", "outer_gains"});
  ScenarioConfig cfg;
  if (j.contains("name")) cfg.name = j["name"].get<std::string>();
  if (j.contains("mission")) cfg.mission = mission_from_json(j["mission"], where + ".mission");
  if (j.contains("airframe")) {
    std::filesystem::path p = j["airframe"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cfg.airframe = load_airframe(p.string());
  }
  cfg.alpha_d = num_or(j, where, "degradation_factor", cfg.alpha_d);
  if (j.contains("adaptive")) cfg.adaptive = j["adaptive"].get<bool>();
  if (j.contains("rcac")) {
    const Json& r = j["rcac"];
    const std::string wr = where + ".rcac";
    check_keys(r, wr, {"theta", "phi", "omega_x", "omega_y", "omega_z"});
    if (r.contains("theta"))
      cfg.rcac.theta = rcac_channel_from_json(r["theta"], wr + ".theta", cfg.rcac.theta);
    if (r.contains("phi"))
      cfg.rcac.phi = rcac_channel_from_json(r["phi"], wr + ".phi", cfg.rcac.phi);
    if (r.contains("omega_x"))
      cfg.rcac.omega_x = rcac_channel_from_json(r["omega_x"], wr + ".omega_x", cfg.rcac.omega_x);
    if (r.contains("omega_y"))
      cfg.rcac.omega_y = rcac_channel_from_json(r["omega_y"], wr + ".omega_y", cfg.rcac.omega_y);
    if (r.contains("omega_z"))
      cfg.rcac.omega_z = rcac_channel_from_json(r["omega_z"], wr + ".omega_z", cfg.rcac.omega_z);
  }
  if (j.contains("fault") && !j["fault"].is_null()) {
    const Json& f = j["fault"];
    const std::string wf = where + ".fault";
    check_keys(f, wf, {"surface", "stuck_value", "t_start_s"});
    FaultConfig fc;
    fc.surface = surface_from_string(f["surface"].get<std::string>(), wf);
    fc.stuck_value = num(f, wf, "stuck_value");
    fc.t_start = num(f, wf, "t_start_s");
    fc.validate();
    cfg.fault = fc;
  }
  if (j.contains("env")) {
    const Json& e = j["env"];
    const std::string we = where + ".env";
    check_keys(e, we, {"wind_ms", "rho_kgm3", "rho0_kgm3", "g_ms2"});
    cfg.env.wind = vec3_or(e, we, "wind_ms", cfg.env.wind);
    cfg.env.rho = num_or(e, we, "rho_kgm3", cfg.env.rho);
    cfg.env.rho0 = num_or(e, we, "rho0_kgm3", cfg.env.rho0);
    cfg.env.g = num_or(e, we, "g_ms2", cfg.env.g);
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    const Json& n = j["noise"];
    const std::string wn = where + ".noise";
    check_keys(n, wn, {"pos_m", "euler_rad", "omega_rads", "airspeed_ms"});
    NoiseSpec ns;
    ns.pos = num_or(n, wn, "pos_m", 0.0);
    ns.euler = num_or(n, wn, "euler_rad", 0.0);
    ns.omega = num_or(n, wn, "omega_rads", 0.0);
    ns.airspeed = num_or(n, wn, "airspeed_ms", 0.0);
    cfg.noise = ns;
  }
  cfg.duration = num_or(j, where, "duration_s", cfg.duration);
  cfg.dt = num_or(j, where, "dt_s", cfg.dt);
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.start_altitude = num_or(j, where, "start_altitude_m", cfg.start_altitude);
  if (j.contains("attitude_gains"))
    cfg.attitude_gains = attitude_gains_from_json(j["attitude_gains"],
                                                  where + ".attitude_gains",
                                                  cfg.attitude_gains);
  if (j.contains("attitude_config")) {
    const Json& a = j["attitude_config"];
    const std::string wa = where + ".attitude_config";
    check_keys(a, wa, {"v_min_ms", "integrator_limit", "scale_min", "scale_max"});
    cfg.attitude_cfg.v_min = num_or(a, wa, "v_min_ms", cfg.attitude_cfg.v_min);
    cfg.attitude_cfg.integrator_limit =
        vec3_or(a, wa, "integrator_limit", cfg.attitude_cfg.integrator_limit);
    cfg.attitude_cfg.scale_min = num_or(a, wa, "scale_min", cfg.attitude_cfg.scale_min);
    cfg.attitude_cfg.scale_max = num_or(a, wa, "scale_max", cfg.attitude_cfg.scale_max);
  }
  if (j.contains("outer_gains"))
    outer_gains_from_json(j["outer_gains"], where + ".outer_gains", cfg.position_gains);
  cfg.validate();
  return cfg;
}

inline ScenarioConfig load_scenario(const std::string& path) {
  return scenario_from_json(config_detail::load_file(path),
                            std::filesystem::path(path).filename().string(),
                            std::filesystem::path(path).parent_path());
}

inline SweepConfig sweep_from_json(const Json& j, const std::string& where,
                                   const std::filesystem::path& base_dir = {}) {
  using namespace config_detail;
  check_keys(j, where, {"name", "base", "degradation_factors", "adaptive", "fault"});
  SweepConfig sc;
  if (j.contains("name")) sc.name = j["name"].get<std::string>();
  if (!j.contains("base")) throw SimError(ErrorKind::Config, where + ": missing 'base'");
  sc.base = scenario_from_json(j["base"], where + ".base", base_dir);
  if (j.contains("degradation_factors"))
    sc.alpha_d_list = j["degradation_factors"].get<std::vector<double>>();
  if (j.contains("adaptive")) sc.adaptive_list = j["adaptive"].get<std::vector<bool>>();
  if (j.contains("fault")) sc.fault_list = j["fault"].get<std::vector<bool>>();
  return sc;
}

inline SweepConfig load_sweep(const std::string& path) {
  return sweep_from_json(config_detail::load_file(path),
                         std::filesystem::path(path).filename().string(),
                         std::filesystem::path(path).parent_path());
}

}  // namespace fcsim
