// Shared aliases, error types, status flags and small angle/rotation helpers.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fcsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGravity = 9.80665;  // standard gravity [m/s^2]
inline constexpr double kRhoSea = 1.225;     // sea-level air density [kg/m^3]

enum class ErrorKind {
  Config,      // bad parameter/file/schema
  NonFinite,   // NaN/Inf encountered in dynamics
  GimbalGuard, // |theta| approached pi/2
  TrimFailure, // trim search did not converge
};

class SimError : public std::runtime_error {
 public:
  SimError(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Sticky per-step status bits, recorded in telemetry.
namespace flag {
inline constexpr std::uint32_t kUnderspeed = 1u << 0;       // energy controller underspeed protection
inline constexpr std::uint32_t kAirspeedFloor = 1u << 1;    // airspeed below scaling floor
inline constexpr std::uint32_t kGuidanceDegenerate = 1u << 2;
inline constexpr std::uint32_t kSurfaceSaturated = 1u << 3;
inline constexpr std::uint32_t kAdaptFrozen = 1u << 4;      // an adaptive channel froze
inline constexpr std::uint32_t kPitchClamp = 1u << 5;       // energy controller pitch at limit
inline constexpr std::uint32_t kBankClamp = 1u << 6;        // guidance bank command at limit
}  // namespace flag
using Flags = std::uint32_t;

template <typename T>
inline T clamp(T v, T lo, T hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// Wrap to (-pi, pi].
inline double wrap_pi(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

inline bool all_finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

// Body-to-earth rotation for 3-2-1 Euler angles (psi yaw, theta pitch, phi roll), NED frames.
inline Mat3 rotation_body_to_earth(double psi, double theta, double phi) {
  const double cps = std::cos(psi), sps = std::sin(psi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cph = std::cos(phi), sph = std::sin(phi);
  Mat3 r;
  r << cth * cps, sph * sth * cps - cph * sps, cph * sth * cps + sph * sps,
       cth * sps, sph * sth * sps + cph * cps, cph * sth * sps - sph * cps,
       -sth,      sph * cth,                   cph * cth;
  return r;
}

// Map from Euler-angle rates, ordered (phi_dot, theta_dot, psi_dot), to body rates (p, q, r).
// Valid for |theta| < pi/2.
inline Mat3 euler_rate_to_body_map(double theta, double phi) {
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cph = std::cos(phi), sph = std::sin(phi);
  Mat3 s;
  s << 1.0, 0.0,  -sth,
       0.0, cph,  sph * cth,
       0.0, -sph, cph * cth;
  return s;
}

// Inverse of the map above: body rates (p, q, r) -> (phi_dot, theta_dot, psi_dot).
inline Vec3 body_rates_to_euler_rates(double theta, double phi, const Vec3& omega) {
  const double cth = std::cos(theta), tth = std::tan(theta);
  const double cph = std::cos(phi), sph = std::sin(phi);
  const double p = omega[0], q = omega[1], r = omega[2];
  return Vec3(p + tth * (q * sph + r * cph),
              q * cph - r * sph,
              (q * sph + r * cph) / cth);
}

// z-component of the cross product of two horizontal NED vectors; positive when b is
// clockwise (seen from above) of a.
inline double cross2(double an, double ae, double bn, double be) { return an * be - ae * bn; }

}  // namespace fcsim
