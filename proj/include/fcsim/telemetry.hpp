// Per-step telemetry record and CSV serialization. Floats are written with shortest
// round-trip formatting, so a parsed file reproduces the in-memory doubles bit-exactly.
#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fcsim/core.hpp"
#include "fcsim/mission.hpp"

namespace fcsim {

struct TelemetryRecord {
  double t = 0.0;
  int phase = 0;        // Phase enum value
  int mode = 0;         // PilotMode enum value
  std::uint32_t flags = 0;
  // Measured state
  double r_n = 0, r_e = 0, r_d = 0, h_m = 0;
  double psi_m = 0, theta_m = 0, phi_m = 0;
  double wx_m = 0, wy_m = 0, wz_m = 0;
  double v_true = 0, v_ind = 0, v_gnd = 0;
  // Outer-loop setpoints
  double h_s = 0, v_ts = 0, theta_s = 0, phi_s = 0;
  // Inner-loop setpoints
  double wx_s = 0, wy_s = 0, wz_s = 0;
  double ax_s = 0, ay_s = 0, az_s = 0;
  // Actuators (post-fault, as applied to the plant)
  double ail_l = 0, ail_r = 0, elev = 0, rud = 0, thr = 0;
  // Adaptive inputs and gains
  double u_theta = 0, u_phi = 0, u_wx = 0, u_wy = 0, u_wz = 0;
  double th_theta = 0, th_phi = 0;
  double th_wx_p = 0, th_wx_i = 0, th_wy_p = 0, th_wy_i = 0, th_wz_p = 0, th_wz_i = 0;
  double xtrack = 0;  // distance to active path [m]
};

namespace telemetry_detail {

inline constexpr const char* kHeader =
    "t,phase,mode,flags,r_n,r_e,r_d,h_m,psi_m,theta_m,phi_m,wx_m,wy_m,wz_m,"
    "v_true,v_ind,v_gnd,h_s,v_ts,theta_s,phi_s,wx_s,wy_s,wz_s,ax_s,ay_s,az_s,"
    "ail_l,ail_r,elev,rud,thr,u_theta,u_phi,u_wx,u_wy,u_wz,th_theta,th_phi,"
    "th_wx_p,th_wx_i,th_wy_p,th_wy_i,th_wz_p,th_wz_i,xtrack";

inline void append_num(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

template <typename Fn>
inline void for_each_field(const TelemetryRecord& r, Fn&& fn) {
  const double* fields[] = {
      &r.r_n, &r.r_e, &r.r_d, &r.h_m, &r.psi_m, &r.theta_m, &r.phi_m,
      &r.wx_m, &r.wy_m, &r.wz_m, &r.v_true, &r.v_ind, &r.v_gnd,
      &r.h_s, &r.v_ts, &r.theta_s, &r.phi_s, &r.wx_s, &r.wy_s, &r.wz_s,
      &r.ax_s, &r.ay_s, &r.az_s, &r.ail_l, &r.ail_r, &r.elev, &r.rud, &r.thr,
      &r.u_theta, &r.u_phi, &r.u_wx, &r.u_wy, &r.u_wz, &r.th_theta, &r.th_phi,
      &r.th_wx_p, &r.th_wx_i, &r.th_wy_p, &r.th_wy_i, &r.th_wz_p, &r.th_wz_i,
      &r.xtrack};
  for (const double* f : fields) fn(*f);
}

template <typename Fn>
inline void for_each_field(TelemetryRecord& r, Fn&& fn) {
  for_each_field(static_cast<const TelemetryRecord&>(r),
                 [&](const double& v) { fn(const_cast<double&>(v)); });
}

}  // namespace telemetry_detail

inline std::string to_csv(const std::vector<TelemetryRecord>& records) {
  std::string out(telemetry_detail::kHeader);
  out += '\n';
  for (const auto& r : records) {
    telemetry_detail::append_num(out, r.t);
    out += ',';
    out += std::to_string(r.phase);
    out += ',';
    out += std::to_string(r.mode);
    out += ',';
    out += std::to_string(r.flags);
    telemetry_detail::for_each_field(r, [&](const double& v) {
      out += ',';
      telemetry_detail::append_num(out, v);
    });
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::string& path, const std::vector<TelemetryRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SimError(ErrorKind::Config, "telemetry: cannot open " + path);
  f << to_csv(records);
}

inline std::vector<TelemetryRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != telemetry_detail::kHeader)
    throw SimError(ErrorKind::Config, "telemetry: unrecognized CSV header");
  std::vector<TelemetryRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TelemetryRecord r;
    const char* p = line.data();
    const char* end = p + line.size();
    auto next = [&](auto& v) {
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc())
        throw SimError(ErrorKind::Config, "telemetry: bad CSV field");
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    };
    next(r.t);
    next(r.phase);
    next(r.mode);
    next(r.flags);
    telemetry_detail::for_each_field(r, [&](double& v) { next(v); });
    out.push_back(r);
  }
  return out;
}

inline std::vector<TelemetryRecord> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SimError(ErrorKind::Config, "telemetry: cannot open " + path);
  return parse_csv(f);
}

}  // namespace fcsim
