// Nonlinear lateral path guidance: a reference point is placed a speed-scaled distance
// L1 ahead on the path, and the bank setpoint commands the lateral acceleration
// 2 V^2 / L1 * sin(eta) toward it (eta = angle from ground velocity to the line of sight).
#pragma once

#include "fcsim/core.hpp"

namespace fcsim {

// Horizontal path element. Lines are defined by two distinct points (followed as the
// infinite line through them, in the p0 -> p1 direction); arcs by center, radius and a
// direction (+1 flies the circle clockwise seen from above, -1 counterclockwise).
struct PathSegment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Vec3 p0{0, 0, 0};       // line start, NED [m] (z unused by lateral guidance)
  Vec3 p1{0, 0, 0};       // line end
  Vec3 center{0, 0, 0};   // arc center
  double radius = 0.0;    // [m]
  int direction = 1;      // +1 clockwise, -1 counterclockwise

  static PathSegment line(const Vec3& p0, const Vec3& p1) {
    if ((p1 - p0).head<2>().norm() < 1e-9)
      throw SimError(ErrorKind::Config, "path: line endpoints coincide");
    PathSegment s;
    s.kind = Kind::Line;
    s.p0 = p0;
    s.p1 = p1;
    return s;
  }
  static PathSegment arc(const Vec3& center, double radius, int direction) {
    if (!(radius > 0.0)) throw SimError(ErrorKind::Config, "path: radius must be > 0");
    if (direction != 1 && direction != -1)
      throw SimError(ErrorKind::Config, "path: direction must be +1 or -1");
    PathSegment s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.direction = direction;
    return s;
  }
};

struct GuidanceConfig {
  double period = 6.0;     // L1 period [s]
  double damping = 0.75;   // L1 damping ratio
  double bank_limit = 0.873;  // |phi_s| clamp [rad]
  double min_speed = 0.5;  // ground speed below which geometry is degenerate [m/s]
};

// Rotate a horizontal NED vector clockwise (seen from above) by angle a.
inline void rotate_cw(double& n, double& e, double a) {
  const double c = std::cos(a), s = std::sin(a);
  const double n2 = n * c - e * s;
  e = n * s + e * c;
  n = n2;
}

// Bank-angle setpoint tracking the segment. Degenerate geometry (no ground speed, or
// standing on an arc center) holds fallback_phi_s and flags.
inline double lateral_guidance(const Vec3& r_m, const Vec3& ground_vel,
                               const PathSegment& seg, const GuidanceConfig& cfg, double g,
                               double fallback_phi_s, Flags& flags) {
  const double vn = ground_vel[0], ve = ground_vel[1];
  const double speed = std::hypot(vn, ve);
  if (speed < cfg.min_speed) {
    flags |= flag::kGuidanceDegenerate;
    return fallback_phi_s;
  }
  const double l1 = cfg.damping * cfg.period * speed / kPi;

  // Reference point on the path.
  double ref_n, ref_e;
  if (seg.kind == PathSegment::Kind::Line) {
    const double dn0 = seg.p1[0] - seg.p0[0], de0 = seg.p1[1] - seg.p0[1];
    const double len = std::hypot(dn0, de0);
    const double tn = dn0 / len, te = de0 / len;
    const double along = (r_m[0] - seg.p0[0]) * tn + (r_m[1] - seg.p0[1]) * te;
    const double proj_n = seg.p0[0] + along * tn, proj_e = seg.p0[1] + along * te;
    const double xtk = std::hypot(r_m[0] - proj_n, r_m[1] - proj_e);
    const double ahead = (xtk < l1) ? std::sqrt(l1 * l1 - xtk * xtk) : 0.0;
    ref_n = proj_n + ahead * tn;
    ref_e = proj_e + ahead * te;
  } else {
    double rel_n = r_m[0] - seg.center[0], rel_e = r_m[1] - seg.center[1];
    const double dist = std::hypot(rel_n, rel_e);
    if (dist < 1e-6) {
      flags |= flag::kGuidanceDegenerate;
      return fallback_phi_s;
    }
    rel_n /= dist;
    rel_e /= dist;
    const double sweep = clamp(l1 / seg.radius, 0.0, kPi / 2.0);
    rotate_cw(rel_n, rel_e, seg.direction * sweep);
    ref_n = seg.center[0] + seg.radius * rel_n;
    ref_e = seg.center[1] + seg.radius * rel_e;
  }

  const double los_n = ref_n - r_m[0], los_e = ref_e - r_m[1];
  if (std::hypot(los_n, los_e) < 1e-9) {
    flags |= flag::kGuidanceDegenerate;
    return fallback_phi_s;
  }
  // Signed angle from ground velocity to line of sight; positive = turn right.
  const double eta = clamp(std::atan2(cross2(vn, ve, los_n, los_e),
                                      vn * los_n + ve * los_e),
                           -kPi / 2.0, kPi / 2.0);
  const double a_cmd = 2.0 * speed * speed / l1 * std::sin(eta);
  const double phi_raw = std::atan(a_cmd / g);
  const double phi_s = clamp(phi_raw, -cfg.bank_limit, cfg.bank_limit);
  if (phi_s != phi_raw) flags |= flag::kBankClamp;
  return phi_s;
}

}  // namespace fcsim
