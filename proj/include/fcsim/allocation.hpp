// Moment allocation: angular-acceleration setpoint -> normalized surface commands via a
// fixed pseudo-inverse of the per-surface moment effectiveness at the cruise dynamic
// pressure. Deliberately not airspeed-scheduled; the rate loops carry the scheduling.
#pragma once

#include "fcsim/airframe.hpp"
#include "fcsim/core.hpp"

namespace fcsim {

class ControlAllocator {
 public:
  using Mat34 = Eigen::Matrix<double, 3, 4>;
  using Mat43 = Eigen::Matrix<double, 4, 3>;

  ControlAllocator(const AircraftParams& p, const Environment& env) {
    inertia_ = p.inertia;
    const double qbar0 = 0.5 * env.rho * p.cruise_airspeed_true * p.cruise_airspeed_true;
    const double roll_unit = qbar0 * p.wing_area * p.wing_span * p.cl_delta_a * p.aileron_limit;
    const double pitch_unit = qbar0 * p.wing_area * p.chord * p.cm_delta_e * p.elevator_limit;
    const double yaw_unit = qbar0 * p.wing_area * p.wing_span * p.cn_delta_r * p.rudder_limit;

    // Columns: aileron_left, aileron_right, elevator, rudder (one normalized unit each).
    b_.setZero();
    b_(0, 0) = roll_unit;
    b_(0, 1) = -roll_unit;
    b_(1, 2) = pitch_unit;
    b_(2, 3) = yaw_unit;

    Eigen::CompleteOrthogonalDecomposition<Mat34> cod(b_);
    if (cod.rank() < 3)
      throw SimError(ErrorKind::Config,
                     "allocation: effectiveness matrix is rank deficient (check "
                     "cl_delta_a/cm_delta_e/cn_delta_r and surface limits)");
    b_pinv_ = cod.pseudoInverse();
  }

  // Minimum-norm surface set for the demanded angular acceleration; throttle passes
  // through. Commands are clamped to their normalized ranges, flagged when clamping bites.
  SurfaceCommand allocate(const Vec3& alpha_s, double throttle, Flags& flags) const {
    const Vec3 m(inertia_[0] * alpha_s[0], inertia_[1] * alpha_s[1], inertia_[2] * alpha_s[2]);
    const Eigen::Vector4d u = b_pinv_ * m;
    SurfaceCommand c;
    c.aileron_left = u[0];
    c.aileron_right = u[1];
    c.elevator = u[2];
    c.rudder = u[3];
    c.throttle = throttle;
    const SurfaceCommand cc = c.clamped();
    if (cc.aileron_left != c.aileron_left || cc.aileron_right != c.aileron_right ||
        cc.elevator != c.elevator || cc.rudder != c.rudder)
      flags |= flag::kSurfaceSaturated;
    return cc;
  }

  const Mat34& effectiveness() const { return b_; }
  const Mat43& pseudo_inverse() const { return b_pinv_; }

 private:
  Vec3 inertia_{0, 0, 0};
  Mat34 b_;
  Mat43 b_pinv_;
};

}  // namespace fcsim
