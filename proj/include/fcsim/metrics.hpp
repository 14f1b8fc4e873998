// Tracking metrics: RMS roll error, RMS pitch error and RMS cross-track distance over the
// loiter window, plus normalization against a named baseline run.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fcsim/guidance.hpp"
#include "fcsim/mission.hpp"
#include "fcsim/telemetry.hpp"

namespace fcsim {

// Horizontal distance from the aircraft to the active path: perpendicular distance to the
// infinite line for line segments, |dist-to-center - radius| for arcs.
inline double cross_track_error(const Vec3& r_m, const PathSegment& seg) {
  if (seg.kind == PathSegment::Kind::Line) {
    const double dn = seg.p1[0] - seg.p0[0], de = seg.p1[1] - seg.p0[1];
    const double len = std::hypot(dn, de);
    return std::abs(cross2(dn / len, de / len, r_m[0] - seg.p0[0], r_m[1] - seg.p0[1]));
  }
  const double d = std::hypot(r_m[0] - seg.center[0], r_m[1] - seg.center[1]);
  return std::abs(d - seg.radius);
}

struct RunSummary {
  std::string name;
  double j_phi = 0.0;    // RMS roll-tracking error [rad]
  double j_theta = 0.0;  // RMS pitch-tracking error [rad]
  double j_traj = 0.0;   // RMS cross-track distance [m]
  long samples = 0;      // records in the metric window
  bool failed = false;   // run aborted (fault state) or never reached the window
  std::string failure_reason;
  // Relative to a named baseline (1.0 = baseline); NaN until normalized.
  std::string baseline;
  double j_phi_rel = std::nan("");
  double j_theta_rel = std::nan("");
  double j_traj_rel = std::nan("");
};

// RMS metrics over the loiter-phase records.
inline RunSummary metrics(const std::vector<TelemetryRecord>& records,
                          const std::string& name = "run") {
  RunSummary s;
  s.name = name;
  double sum_phi = 0.0, sum_theta = 0.0, sum_traj = 0.0;
  long n = 0;
  for (const auto& r : records) {
    if (r.phase != static_cast<int>(Phase::Loiter)) continue;
    const double ephi = r.phi_s - r.phi_m;
    const double etheta = r.theta_s - r.theta_m;
    sum_phi += ephi * ephi;
    sum_theta += etheta * etheta;
    sum_traj += r.xtrack * r.xtrack;
    ++n;
  }
  if (n == 0) throw SimError(ErrorKind::Config, "metrics: no records in the loiter window");
  s.j_phi = std::sqrt(sum_phi / n);
  s.j_theta = std::sqrt(sum_theta / n);
  s.j_traj = std::sqrt(sum_traj / n);
  s.samples = n;
  return s;
}

inline void normalize(RunSummary& s, const RunSummary& baseline) {
  if (!(baseline.j_phi > 0.0) || !(baseline.j_theta > 0.0) || !(baseline.j_traj > 0.0))
    throw SimError(ErrorKind::Config, "normalize: baseline metrics must be positive");
  s.baseline = baseline.name;
  s.j_phi_rel = s.j_phi / baseline.j_phi;
  s.j_theta_rel = s.j_theta / baseline.j_theta;
  s.j_traj_rel = s.j_traj / baseline.j_traj;
}

}  // namespace fcsim
